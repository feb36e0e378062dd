"""Character n-gram language identification.

Naive-Bayes scoring over 1/2/3-gram profiles with additive smoothing,
preceded by a Unicode-script pre-filter. Scoring is deterministic: the
whole text is scored, never a random sample.
"""

import json
import math
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from ._kernels import count_char_ngrams

MAX_N = 3
ALPHA = 0.5
MIN_TRAINING_CHARS = 10_000

LATIN_LANGS = frozenset({"en", "cs", "de", "fr", "ro", "nl", "it"})

_SCRIPT_LANGS = {
    "han": frozenset({"zh", "ja"}),
    "kana": frozenset({"ja"}),
    "hangul": frozenset({"ko"}),
    "cyrillic": frozenset({"ru", "uk"}),
    "devanagari": frozenset({"hi"}),
    "arabic": frozenset({"ar"}),
    "latin": LATIN_LANGS,
}


class EmptyText(ValueError):
    pass


class NoProfiles(ValueError):
    pass


class InsufficientText(ValueError):
    pass


def _char_script(ch):
    cp = ord(ch)
    if 0x4E00 <= cp <= 0x9FFF or 0x3400 <= cp <= 0x4DBF or 0xF900 <= cp <= 0xFAFF:
        return "han"
    if 0x3040 <= cp <= 0x30FF:
        return "kana"
    if 0xAC00 <= cp <= 0xD7AF or 0x1100 <= cp <= 0x11FF:
        return "hangul"
    if 0x0400 <= cp <= 0x04FF or 0x0500 <= cp <= 0x052F:
        return "cyrillic"
    if 0x0900 <= cp <= 0x097F:
        return "devanagari"
    if 0x0600 <= cp <= 0x06FF or 0x0750 <= cp <= 0x077F:
        return "arabic"
    return "latin"


def script_class(text):
    """Dominant script of the text's letters, or None below 90% dominance."""
    letters = [ch for ch in unicodedata.normalize("NFC", text) if ch.isalpha()]
    if not letters:
        return None
    counts = {}
    for ch in letters:
        s = _char_script(ch)
        counts[s] = counts.get(s, 0) + 1
    # Japanese mixes Han and kana; fold Han into kana when kana is present
    if "kana" in counts:
        counts["kana"] += counts.pop("han", 0)
    top, top_n = max(counts.items(), key=lambda kv: kv[1])
    if top_n / len(letters) >= 0.9:
        return top
    return None


def normalize_for_ngrams(text):
    """NFC + casefold; digits and punctuation collapse to placeholder classes."""
    out = []
    last_space = True
    for ch in unicodedata.normalize("NFC", text).casefold():
        if ch.isspace():
            if not last_space:
                out.append(" ")
                last_space = True
            continue
        cat = unicodedata.category(ch)
        if cat.startswith("N"):
            ch = "0"
        elif cat[0] in ("P", "S"):
            ch = "¤"
        out.append(ch)
        last_space = False
    return "".join(out).strip()


@dataclass
class LanguageProfile:
    lang: str
    gram_counts: dict  # n -> {gram: count}
    training_chars: int
    alpha: float = ALPHA

    def __post_init__(self):
        self._totals = {n: sum(c.values()) for n, c in self.gram_counts.items()}
        self._vocab = {n: len(c) + 1 for n, c in self.gram_counts.items()}
        self._log_cache = {}

    def log_prob(self, n, gram):
        key = (n, gram)
        cached = self._log_cache.get(key)
        if cached is None:
            count = self.gram_counts[n].get(gram, 0)
            denom = self._totals[n] + self.alpha * self._vocab[n]
            cached = math.log((count + self.alpha) / denom)
            self._log_cache[key] = cached
        return cached

    def to_json(self):
        return json.dumps({
            "lang": self.lang,
            "n": MAX_N,
            "alpha": self.alpha,
            "training_chars": self.training_chars,
            "grams": {str(n): self.gram_counts[n] for n in sorted(self.gram_counts)},
        }, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(
            lang=obj["lang"],
            gram_counts={int(n): dict(c) for n, c in obj["grams"].items()},
            training_chars=obj["training_chars"],
            alpha=obj["alpha"],
        )


@dataclass(frozen=True)
class DetectionResult:
    ranked: tuple  # ((lang, posterior), ...), descending

    @property
    def top(self):
        return self.ranked[0][0]


def train_profile(lang, text_stream):
    """Train a profile from an iterable of text chunks."""
    if isinstance(text_stream, str):
        text_stream = [text_stream]
    normalized = normalize_for_ngrams(" ".join(text_stream))
    if len(normalized) < MIN_TRAINING_CHARS:
        raise InsufficientText(
            f"{lang}: {len(normalized)} chars after normalization, need {MIN_TRAINING_CHARS}"
        )
    counts = {n: count_char_ngrams(normalized, n) for n in range(1, MAX_N + 1)}
    return LanguageProfile(lang=lang, gram_counts=counts, training_chars=len(normalized))


def detect(text, profiles):
    """Rank profile languages by naive-Bayes posterior over the whole text."""
    if len(profiles) < 2:
        raise NoProfiles("need at least two profiles for detection")
    normalized = normalize_for_ngrams(text)
    if not any(ch.isalpha() for ch in normalized):
        raise EmptyText("no letter codepoints in text")

    by_lang = {p.lang: p for p in profiles}
    script = script_class(text)
    candidates = sorted(by_lang)
    if script is not None:
        restricted = sorted(set(by_lang) & _SCRIPT_LANGS[script])
        if restricted:
            candidates = restricted

    grams_by_n = {n: count_char_ngrams(normalized, n) for n in range(1, MAX_N + 1)}
    log_scores = {}
    for lang in candidates:
        profile = by_lang[lang]
        score = 0.0
        for n, grams in grams_by_n.items():
            for gram, cnt in grams.items():
                score += cnt * profile.log_prob(n, gram)
        log_scores[lang] = score

    shift = max(log_scores.values())
    weights = {lang: math.exp(s - shift) for lang, s in log_scores.items()}
    z = sum(weights.values())
    posterior = {lang: w / z for lang, w in weights.items()}
    ranked = sorted(posterior.items(), key=lambda kv: (-kv[1], kv[0]))
    ranked += [(lang, 0.0) for lang in sorted(set(by_lang) - set(candidates))]
    return DetectionResult(ranked=tuple(ranked))


def save_profile(profile, directory):
    path = Path(directory) / f"{profile.lang}.json"
    path.write_text(profile.to_json() + "\n", encoding="utf-8")
    return path


def load_profiles(directory):
    profiles = []
    for path in sorted(Path(directory).glob("*.json")):
        profiles.append(LanguageProfile.from_json(path.read_text(encoding="utf-8")))
    if not profiles:
        raise NoProfiles(f"no profile files in {directory}")
    return profiles


def default_profiles_dir():
    return Path(__file__).parent / "profiles"


def default_profiles():
    """Profiles shipped with the package (the evaluation languages)."""
    return load_profiles(default_profiles_dir())
