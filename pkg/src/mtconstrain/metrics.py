"""Surface metrics (BLEU, chrF) and the three error ratios (OT, SC, OUG).

Corpus BLEU is unsmoothed clipped n-gram precision with brevity penalty;
sentence BLEU adds exponential-decay smoothing for zero counts at n >= 2.
chrF uses character 6-grams with beta = 2 and whitespace excluded.
"""

import json
import math
import unicodedata
from dataclasses import dataclass, field

from . import langid as _langid
from . import templates
from .core import TranslationDirection

BLEU_MAX_N = 4
CHRF_MAX_N = 6
CHRF_BETA = 2
SC_BLEU_THRESHOLD = 80.0  # strict: a copy needs score > 80
OUG_HIGH = 2.0            # strict: ratio > 2 or ratio < 0.5
OUG_LOW = 0.5

CHAR_LEVEL_LANGS = frozenset({"zh", "ja", "ko"})

from ._kernels import char_ngram_match_stats, token_ngram_stats


class LengthMismatch(ValueError):
    pass


class MissingSource(KeyError):
    pass


class MissingReference(KeyError):
    pass


class UnresolvedId(KeyError):
    pass


class ModeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TokenizedSentence:
    tokens: tuple
    tokenizer_id: str  # "intl13a_style" | "char_level"


def tokenizer_for(lang):
    return "char_level" if lang in CHAR_LEVEL_LANGS else "intl13a_style"


def _is_number(ch):
    return unicodedata.category(ch).startswith("N")


def tokenize(text, tokenizer_id):
    """Tokenize for BLEU scoring.

    intl13a_style separates Unicode punctuation from adjacent non-number
    characters and always separates symbols, then splits on whitespace.
    char_level yields one token per non-space codepoint.
    """
    text = unicodedata.normalize("NFC", text)
    if tokenizer_id == "char_level":
        return TokenizedSentence(tuple(ch for ch in text if not ch.isspace()), tokenizer_id)
    if tokenizer_id != "intl13a_style":
        raise ValueError(f"unknown tokenizer: {tokenizer_id!r}")
    out = []
    n = len(text)
    for i, ch in enumerate(text):
        cat = unicodedata.category(ch)
        if cat.startswith("S"):
            out.append(f" {ch} ")
        elif cat.startswith("P"):
            prev_sep = i > 0 and not _is_number(text[i - 1])
            next_sep = i < n - 1 and not _is_number(text[i + 1])
            out.append(f" {ch} " if (prev_sep or next_sep) else ch)
        else:
            out.append(ch)
    return TokenizedSentence(tuple("".join(out).split()), tokenizer_id)


def _bleu_from_stats(matches, totals, hyp_len, ref_len, smooth):
    log_sum = 0.0
    invcnt = 1
    for n in range(BLEU_MAX_N):
        m, t = matches[n], totals[n]
        if m > 0:
            p = m / t
        elif smooth and n >= 1:
            invcnt *= 2
            p = 1.0 / (invcnt * max(t, 1))
        else:
            return 0.0
        log_sum += math.log(p)
    if hyp_len == 0:
        return 0.0
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * bp * math.exp(log_sum / BLEU_MAX_N)


def corpus_bleu(hyps, refs):
    """Corpus BLEU over tokenized sentences, range [0, 100], unsmoothed."""
    if len(hyps) != len(refs):
        raise LengthMismatch(f"{len(hyps)} hypotheses vs {len(refs)} references")
    if not hyps:
        raise LengthMismatch("empty corpus")
    matches = [0] * BLEU_MAX_N
    totals = [0] * BLEU_MAX_N
    hyp_len = ref_len = 0
    for hyp, ref in zip(hyps, refs):
        stats = token_ngram_stats(list(hyp.tokens), list(ref.tokens), BLEU_MAX_N)
        for n, (m, t) in enumerate(stats):
            matches[n] += m
            totals[n] += t
        hyp_len += len(hyp.tokens)
        ref_len += len(ref.tokens)
    return _bleu_from_stats(matches, totals, hyp_len, ref_len, smooth=False)


def sentence_bleu(hyp, ref):
    """Sentence BLEU with exponential-decay smoothing for n >= 2."""
    stats = token_ngram_stats(list(hyp.tokens), list(ref.tokens), BLEU_MAX_N)
    matches = [m for m, _ in stats]
    totals = [t for _, t in stats]
    return _bleu_from_stats(matches, totals, len(hyp.tokens), len(ref.tokens), smooth=True)


def chrf(hyps, refs):
    """Corpus chrF: character n-grams (1..6, whitespace removed), beta = 2."""
    if len(hyps) != len(refs):
        raise LengthMismatch(f"{len(hyps)} hypotheses vs {len(refs)} references")
    if not hyps:
        raise LengthMismatch("empty corpus")
    hyp_tot = [0] * CHRF_MAX_N
    ref_tot = [0] * CHRF_MAX_N
    match = [0] * CHRF_MAX_N
    for hyp, ref in zip(hyps, refs):
        h = "".join(unicodedata.normalize("NFC", hyp).split())
        r = "".join(unicodedata.normalize("NFC", ref).split())
        for n, (ht, rt, m) in enumerate(char_ngram_match_stats(h, r, CHRF_MAX_N)):
            hyp_tot[n] += ht
            ref_tot[n] += rt
            match[n] += m
    precisions, recalls = [], []
    for n in range(CHRF_MAX_N):
        if hyp_tot[n] > 0:
            precisions.append(match[n] / hyp_tot[n])
        else:
            precisions.append(1.0 if ref_tot[n] == 0 else 0.0)
        if ref_tot[n] > 0:
            recalls.append(match[n] / ref_tot[n])
        else:
            recalls.append(1.0 if hyp_tot[n] == 0 else 0.0)
    p = sum(precisions) / CHRF_MAX_N
    r = sum(recalls) / CHRF_MAX_N
    beta_sq = CHRF_BETA * CHRF_BETA
    if p == 0.0 and r == 0.0:
        return 0.0
    return 100.0 * (1 + beta_sq) * p * r / (beta_sq * p + r)


def is_off_target(output, tgt_lang, profiles):
    """True when the detector's top language differs from the expected target.

    Empty or undetectable output counts as off-target.
    """
    try:
        return _langid.detect(output, profiles).top != tgt_lang
    except _langid.EmptyText:
        return True


def is_source_copy(output, src_text, src_lang):
    tok = tokenizer_for(src_lang)
    score = sentence_bleu(tokenize(output, tok), tokenize(src_text, tok))
    return score > SC_BLEU_THRESHOLD


def _length_units(text, lang):
    if lang in CHAR_LEVEL_LANGS:
        return sum(1 for ch in text if not ch.isspace())
    return len(text.split())


def is_over_under(output, ref_text, tgt_lang):
    """OUG flag, or None when the reference has zero length units."""
    ref_len = _length_units(ref_text, tgt_lang)
    if ref_len == 0:
        return None
    ratio = _length_units(output, tgt_lang) / ref_len
    return ratio > OUG_HIGH or ratio < OUG_LOW


def ot_ratio(preds, profiles):
    """Per-direction off-target ratio over prediction rows."""
    if len(profiles) < 2:
        raise _langid.NoProfiles("need at least two profiles")
    flags = {}
    for row in preds:
        d = f"{row['src_lang']}-{row['tgt_lang']}"
        flags.setdefault(d, []).append(is_off_target(row["output"], row["tgt_lang"], profiles))
    return {d: sum(v) / len(v) for d, v in flags.items()}


def sc_ratio(preds, sources):
    """Per-direction source-copy ratio; ``sources`` maps id -> source text."""
    flags = {}
    for row in preds:
        if row["id"] not in sources:
            raise MissingSource(row["id"])
        d = f"{row['src_lang']}-{row['tgt_lang']}"
        flags.setdefault(d, []).append(
            is_source_copy(row["output"], sources[row["id"]], row["src_lang"])
        )
    return {d: sum(v) / len(v) for d, v in flags.items()}


def oug_ratio(preds, refs):
    """Per-direction over/under-generation ratio; ``refs`` maps id -> reference."""
    flags = {}
    for row in preds:
        if row["id"] not in refs:
            raise MissingReference(row["id"])
        d = f"{row['src_lang']}-{row['tgt_lang']}"
        flag = is_over_under(row["output"], refs[row["id"]], row["tgt_lang"])
        if flag is not None:
            flags.setdefault(d, []).append(flag)
        else:
            flags.setdefault(d, [])
    return {d: (sum(v) / len(v) if v else 0.0) for d, v in flags.items()}


@dataclass
class EvalReport:
    per_direction: dict  # direction str -> metrics dict
    macro: dict
    mode: str
    length_unit_note: str = "whitespace tokens; codepoints for zh/ja/ko"
    sentences: list = field(default_factory=list)

    def to_json(self):
        return json.dumps({
            "mode": self.mode,
            "length_unit": self.length_unit_note,
            "per_direction": self.per_direction,
            "macro": self.macro,
        }, ensure_ascii=False, indent=2)

    def to_table(self):
        cols = ["bleu", "chrf", "ot_ratio", "sc_ratio", "oug_ratio", "prefix_compliance_rate", "n"]
        header = ["direction", "bleu", "chrf", "OT%", "SC%", "OUG%", "comply%", "n"]
        rows = [header]
        for d in sorted(self.per_direction):
            m = self.per_direction[d]
            rows.append([d] + [_fmt_cell(c, m[c]) for c in cols])
        rows.append(["macro"] + [_fmt_cell(c, self.macro.get(c)) for c in cols])
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


def _fmt_cell(col, value):
    if value is None:
        return "-"
    if col == "n":
        return str(value)
    if col in ("bleu", "chrf"):
        return f"{value:.2f}"
    return f"{100.0 * value:.2f}"


def _strip_for_mode(output, direction, mode, variant, scheme):
    if mode == "plain":
        return output, None
    if mode == "tect":
        clean, comp = templates.strip_prefix(output, direction, variant=variant)
    elif mode == "act":
        clean, comp = templates.strip_prefix(output, direction, scheme=scheme)
    else:
        raise ValueError(f"unknown mode: {mode!r}")
    return clean, comp


def evaluate(preds, dataset_rows, profiles, mode="plain", variant=None, scheme=None):
    """Full evaluation: strip templates, then score all metrics per direction.

    ``dataset_rows`` are inference-set rows keyed by id (must carry
    src_text and raw_target). Macro averages are unweighted over directions.
    """
    by_id = {row["id"]: row for row in dataset_rows}
    groups = {}
    sentences = []
    for row in preds:
        rec = by_id.get(row["id"])
        if rec is None:
            raise UnresolvedId(row["id"])
        direction = TranslationDirection(rec["src_lang"], rec["tgt_lang"])
        clean, comp = _strip_for_mode(row["output"], direction, mode, variant, scheme)
        ot = is_off_target(clean, direction.tgt, profiles)
        sc = is_source_copy(clean, rec["src_text"], direction.src)
        oug = is_over_under(clean, rec["raw_target"], direction.tgt)
        sentences.append({
            "id": row["id"],
            "direction": str(direction),
            "ot": ot,
            "sc": sc,
            "oug": oug,
            "compliance": comp.value if comp is not None else None,
        })
        groups.setdefault(str(direction), []).append((clean, rec, comp, ot, sc, oug))

    per_direction = {}
    for d, items in groups.items():
        tgt_lang = items[0][1]["tgt_lang"]
        tok = tokenizer_for(tgt_lang)
        hyps = [tokenize(clean, tok) for clean, *_ in items]
        refs = [tokenize(rec["raw_target"], tok) for _, rec, *_ in items]
        ougs = [oug for *_, oug in items if oug is not None]
        comps = [comp for _, _, comp, *_ in items]
        per_direction[d] = {
            "bleu": corpus_bleu(hyps, refs),
            "chrf": chrf([c for c, *_ in items], [r["raw_target"] for _, r, *_ in items]),
            "ot_ratio": sum(it[3] for it in items) / len(items),
            "sc_ratio": sum(it[4] for it in items) / len(items),
            "oug_ratio": (sum(ougs) / len(ougs)) if ougs else 0.0,
            "prefix_compliance_rate": (
                None if mode == "plain"
                else sum(c == templates.Compliance.EXACT for c in comps) / len(comps)
            ),
            "n": len(items),
        }

    macro = {}
    dirs = sorted(per_direction)
    for col in ("bleu", "chrf", "ot_ratio", "sc_ratio", "oug_ratio", "prefix_compliance_rate"):
        vals = [per_direction[d][col] for d in dirs if per_direction[d][col] is not None]
        macro[col] = sum(vals) / len(vals) if vals else None
    macro["n"] = sum(per_direction[d]["n"] for d in dirs)
    return EvalReport(per_direction=per_direction, macro=macro, mode=mode, sentences=sentences)
