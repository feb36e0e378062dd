"""Language registry, translation directions, and parallel-corpus I/O."""

import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path


class CorpusError(Exception):
    """Base class for corpus ingestion failures."""


class UnreadableFile(CorpusError):
    pass


class MalformedRow(CorpusError):
    def __init__(self, message, line_no=None):
        super().__init__(message if line_no is None else f"line {line_no}: {message}")
        self.line_no = line_no


class DegenerateDirection(ValueError):
    """A direction whose source and target language coincide."""


class UnknownLanguage(KeyError):
    pass


# ISO-639-1 code -> English exonym. Covers the evaluation languages plus the
# extra languages appearing in the off-target survey figure.
_REGISTRY = {
    "en": "English",
    "cs": "Czech",
    "de": "German",
    "fr": "French",
    "zh": "Chinese",
    "ru": "Russian",
    "ro": "Romanian",
    "uk": "Ukrainian",
    "hi": "Hindi",
    "ja": "Japanese",
    "ko": "Korean",
    "nl": "Dutch",
    "ar": "Arabic",
    "it": "Italian",
}


@dataclass(frozen=True)
class LanguageCode:
    code: str
    display_name: str

    def __post_init__(self):
        if len(self.code) != 2 or not self.code.isascii() or not self.code.islower() or not self.code.isalpha():
            raise ValueError(f"language code must be two lowercase ASCII letters: {self.code!r}")
        if not self.display_name:
            raise ValueError("display_name must be nonempty")


def registry():
    """All registered languages, in a stable order."""
    return [LanguageCode(c, n) for c, n in _REGISTRY.items()]


def language(code):
    """Look up a registered language by ISO-639-1 code."""
    try:
        return LanguageCode(code, _REGISTRY[code])
    except KeyError:
        raise UnknownLanguage(code) from None


def display_name(code):
    try:
        return _REGISTRY[code]
    except KeyError:
        raise UnknownLanguage(code) from None


@dataclass(frozen=True, order=True)
class TranslationDirection:
    src: str
    tgt: str

    def __post_init__(self):
        if self.src == self.tgt:
            raise DegenerateDirection(f"{self.src}->{self.tgt}")
        # both must be registered
        display_name(self.src)
        display_name(self.tgt)

    @classmethod
    def parse(cls, text):
        """Parse "en-de" / "en->de" / "ende" into a direction."""
        s = text.replace("->", "-").replace("→", "-")
        if "-" in s:
            src, tgt = s.split("-", 1)
        elif len(s) == 4:
            src, tgt = s[:2], s[2:]
        else:
            raise ValueError(f"cannot parse direction: {text!r}")
        return cls(src, tgt)

    def __str__(self):
        return f"{self.src}-{self.tgt}"


# The 20 evaluation directions: 8 English-centric pairs in both directions
# plus DE<->FR and CS<->UK.
_EVAL_PAIRS = [("en", "cs"), ("en", "de"), ("en", "fr"), ("en", "zh"),
               ("en", "ru"), ("en", "ro"), ("en", "uk"), ("en", "hi"),
               ("de", "fr"), ("cs", "uk")]


def evaluation_directions():
    dirs = []
    for a, b in _EVAL_PAIRS:
        dirs.append(TranslationDirection(a, b))
        dirs.append(TranslationDirection(b, a))
    return dirs


def validate_direction_set(directions):
    """Distinct source/target language sets of a direction list.

    Degenerate directions cannot be constructed, but raw (src, tgt) tuples
    are accepted too and checked here.
    """
    if not directions:
        raise ValueError("direction list is empty")
    sources, targets = set(), set()
    for d in directions:
        if not isinstance(d, TranslationDirection):
            src, tgt = d
            if src == tgt:
                raise DegenerateDirection(f"{src}->{tgt}")
            d = TranslationDirection(src, tgt)
        sources.add(d.src)
        targets.add(d.tgt)
    return {"sources": sources, "targets": targets}


@dataclass(frozen=True)
class ParallelExample:
    id: str
    direction: TranslationDirection
    src_text: str
    tgt_text: str

    def __post_init__(self):
        if not self.src_text.strip() or not self.tgt_text.strip():
            raise ValueError(f"example {self.id}: empty source or target")


@dataclass
class Corpus:
    examples: list
    direction: TranslationDirection
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for ex in self.examples:
            if ex.id in seen:
                raise ValueError(f"duplicate example id: {ex.id}")
            seen.add(ex.id)

    def __len__(self):
        return len(self.examples)


def _normalize(text):
    return unicodedata.normalize("NFC", text)


def load_corpus(path, format, direction, strict=False):
    """Load a parallel corpus from a TSV or JSONL file.

    TSV rows are ``src<TAB>tgt`` (extra columns ignored); JSONL rows carry
    ``src_text``/``tgt_text``. Rows violating the nonempty invariant are
    dropped in lenient mode and counted in ``meta["drop_count"]``; in strict
    mode they raise MalformedRow with the offending line number.
    """
    if format not in ("tsv", "jsonl"):
        raise ValueError(f"unknown corpus format: {format!r}")
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UnreadableFile(str(exc)) from exc

    examples = []
    dropped = 0
    row_no = 0
    for line_no, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        if format == "tsv":
            cols = line.split("\t")
            if len(cols) < 2:
                if strict:
                    raise MalformedRow("expected at least 2 tab-separated columns", line_no)
                dropped += 1
                continue
            src_text, tgt_text = cols[0], cols[1]
            ex_id = f"{direction.src}{direction.tgt}-{row_no}"
        else:
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                if strict:
                    raise MalformedRow(f"invalid JSON: {exc}", line_no) from exc
                dropped += 1
                continue
            if "src_text" not in obj or "tgt_text" not in obj:
                if strict:
                    raise MalformedRow("missing src_text/tgt_text", line_no)
                dropped += 1
                continue
            src_text, tgt_text = obj["src_text"], obj["tgt_text"]
            ex_id = obj.get("id") or f"{direction.src}{direction.tgt}-{row_no}"
        if not str(src_text).strip() or not str(tgt_text).strip():
            if strict:
                raise MalformedRow("empty source or target text", line_no)
            dropped += 1
            continue
        examples.append(ParallelExample(
            id=ex_id,
            direction=direction,
            src_text=_normalize(str(src_text)),
            tgt_text=_normalize(str(tgt_text)),
        ))
        row_no += 1

    meta = {"source": str(path), "drop_count": dropped}
    try:
        return Corpus(examples=examples, direction=direction, meta=meta)
    except ValueError as exc:
        if strict:
            raise MalformedRow(str(exc)) from exc
        raise


def write_corpus(corpus, path, format):
    """Write a corpus as TSV or JSONL (inverse of load_corpus)."""
    path = Path(path)
    lines = []
    for ex in corpus.examples:
        if format == "tsv":
            lines.append(f"{ex.src_text}\t{ex.tgt_text}")
        elif format == "jsonl":
            lines.append(json.dumps({
                "id": ex.id,
                "src_lang": ex.direction.src,
                "tgt_lang": ex.direction.tgt,
                "src_text": ex.src_text,
                "tgt_text": ex.tgt_text,
            }, ensure_ascii=False))
        else:
            raise ValueError(f"unknown corpus format: {format!r}")
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
