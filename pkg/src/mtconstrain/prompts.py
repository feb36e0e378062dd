"""The 14-prompt instruction bank and seeded prompt selection/rendering."""

import hashlib
import json
from dataclasses import dataclass

from .core import UnknownLanguage, display_name


class MissingSlotValue(KeyError):
    """A template slot has no value for the given direction."""


@dataclass(frozen=True)
class PromptTemplate:
    id: int
    pattern: str
    uses_source_lang: bool

    def __post_init__(self):
        if self.pattern.count("[SRC]") != 1:
            raise ValueError(f"prompt {self.id}: [SRC] must appear exactly once")
        if "[L2]" not in self.pattern:
            raise ValueError(f"prompt {self.id}: [L2] missing")
        if self.uses_source_lang != ("[L1]" in self.pattern):
            raise ValueError(f"prompt {self.id}: uses_source_lang flag inconsistent")


_PATTERNS = [
    "Given the following source text in [L1]: [SRC], a good [L2] translation is:",
    "If the original version says [SRC] then the [L2] version should say:",
    "What is the [L2] translation of the sentence: [SRC]?",
    "[L1]: [SRC] = [L2]:",
    "[SRC] translates into [L2] as:",
    "How do you say [SRC] in [L2]?",
    "[SRC] = [L2]:",
    "Translate this from [L1] into [L2]: [SRC]",
    "Translate this into [L2]: [SRC]",
    "Given the following passage: [SRC], a good [L2] translation is:",
    "[L1]: [SRC] translates into [L2] as:",
    "If the [L1] version says: [SRC]; then the [L2] version should say:",
    "What is the [L2] translation of: [SRC]?",
    "What is the [L2] translation of the [L1] sentence: [SRC]?",
]

_BANK = tuple(
    PromptTemplate(id=i + 1, pattern=p, uses_source_lang="[L1]" in p)
    for i, p in enumerate(_PATTERNS)
)


def prompt_bank():
    """The instruction bank, in table order (ids 1..14)."""
    return list(_BANK)


def get_prompt(prompt_id):
    if not 1 <= prompt_id <= len(_BANK):
        raise KeyError(f"prompt id out of range: {prompt_id}")
    return _BANK[prompt_id - 1]


def render_prompt(template, direction, src_text):
    """Substitute [SRC], [L1], [L2] and return the model input string."""
    if not src_text:
        raise ValueError("src_text must be nonempty")
    try:
        tgt_name = display_name(direction.tgt)
        src_name = display_name(direction.src) if template.uses_source_lang else None
    except UnknownLanguage as exc:
        raise MissingSlotValue(f"no display name registered for {exc.args[0]!r}") from exc
    out = template.pattern.replace("[SRC]", src_text).replace("[L2]", tgt_name)
    if template.uses_source_lang:
        out = out.replace("[L1]", src_name)
    return out


def pick_prompt(rng_seed, index):
    """Deterministic uniform draw from the bank, keyed by (seed, index).

    Counter-based so record i's prompt does not depend on how many other
    records were drawn before it.
    """
    digest = hashlib.sha256(f"{rng_seed}:prompt:{index}".encode()).digest()
    return _BANK[int.from_bytes(digest[:8], "big") % len(_BANK)]


def bank_as_json():
    """Prompt bank serialized for external consumers."""
    return json.dumps(
        [
            {"id": t.id, "pattern": t.pattern, "uses_source_lang": t.uses_source_lang}
            for t in _BANK
        ],
        ensure_ascii=False,
        indent=2,
    )
