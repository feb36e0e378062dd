"""Seeded pseudo-translator with configurable injected error rates.

Serves as ground truth for the diagnostic metrics: every prediction is
labeled with the behavior that produced it (clean / ot / sc / oug_over /
oug_under), and generation is fully deterministic given the seed.
"""

import hashlib
from dataclasses import dataclass

from . import templates
from .core import TranslationDirection
from .metrics import CHAR_LEVEL_LANGS


class MissingMultiparallel(KeyError):
    """An OT draw has no alternative-language rendering to emit."""


@dataclass(frozen=True)
class ErrorSpec:
    p_ot: float = 0.0
    p_sc: float = 0.0
    p_oug_over: float = 0.0
    p_oug_under: float = 0.0
    seed: int = 42

    def __post_init__(self):
        probs = (self.p_ot, self.p_sc, self.p_oug_over, self.p_oug_under)
        if any(p < 0 for p in probs) or sum(probs) > 1.0:
            raise ValueError("error probabilities must be nonnegative and sum to <= 1")


def _unit_float(seed, record_id, label):
    digest = hashlib.sha256(f"{seed}:{label}:{record_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


def _pick_wrong_lang(variants, src_lang, tgt_lang, seed, record_id):
    wrong = sorted(set(variants) - {tgt_lang, src_lang})
    if not wrong:
        wrong = sorted(set(variants) - {tgt_lang})
    if not wrong:
        raise MissingMultiparallel(record_id)
    idx = int(_unit_float(seed, record_id, "otlang") * len(wrong))
    return wrong[min(idx, len(wrong) - 1)]


def _over_generate(ref, tgt_lang):
    if tgt_lang in CHAR_LEVEL_LANGS:
        chars = [ch for ch in ref if not ch.isspace()]
        return ref + ref + (chars[0] if chars else ref[:1])
    tokens = ref.split()
    return " ".join(tokens + tokens + tokens[:1])


def _under_generate(ref, tgt_lang):
    if tgt_lang in CHAR_LEVEL_LANGS:
        chars = [ch for ch in ref if not ch.isspace()]
        return "".join(chars[: int(0.4 * len(chars))])
    tokens = ref.split()
    return " ".join(tokens[: int(0.4 * len(tokens))])


def simulate(inference_rows, multiparallel, spec, mode="plain", variant=None, scheme=None):
    """Emit (prediction rows, ground-truth label rows) for an inference set.

    ``multiparallel`` maps record id -> {lang: text} and is only consulted
    for OT draws. Clean outputs carry the correct constrained prefix when a
    tect/act mode is declared; injected errors are emitted bare.
    """
    preds = []
    labels = []
    thresholds = (spec.p_ot, spec.p_sc, spec.p_oug_over, spec.p_oug_under)
    for row in inference_rows:
        rid = row["id"]
        src_lang, tgt_lang = row["src_lang"], row["tgt_lang"]
        ref = row["raw_target"]
        u = _unit_float(spec.seed, rid, "draw")
        injected = "clean"
        acc = 0.0
        for name, p in zip(("ot", "sc", "oug_over", "oug_under"), thresholds):
            acc += p
            if u < acc:
                injected = name
                break

        ot_lang = None
        if injected == "ot":
            variants = multiparallel.get(rid)
            if not variants:
                raise MissingMultiparallel(rid)
            ot_lang = _pick_wrong_lang(variants, src_lang, tgt_lang, spec.seed, rid)
            output = variants[ot_lang]
        elif injected == "sc":
            output = row["src_text"]
        elif injected == "oug_over":
            output = _over_generate(ref, tgt_lang)
        elif injected == "oug_under":
            output = _under_generate(ref, tgt_lang)
        else:
            direction = TranslationDirection(src_lang, tgt_lang)
            if mode == "tect":
                output = templates.join_target(templates.build_hard_prefix(variant, direction), ref)
            elif mode == "act":
                output = templates.join_target(templates.build_trigger_sequence(scheme, direction), ref)
            else:
                output = ref

        preds.append({"id": rid, "src_lang": src_lang, "tgt_lang": tgt_lang, "output": output})
        labels.append({"id": rid, "injected": injected, "ot_lang": ot_lang})
    return preds, labels
