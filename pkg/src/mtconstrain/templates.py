"""Target-side constrained templates.

Hard descriptive prefixes (five fixed variants), trigger-token schemes
mapping translation directions to special-token sequences, the vocabulary
manifest for those tokens, and decode-time stripping with a compliance
verdict.
"""

import json
from dataclasses import dataclass
from enum import Enum

from .core import TranslationDirection, display_name, registry

TOOL_VERSION = "mtconstrain-0.1.0"


class UnknownTarget(KeyError):
    """Direction's target language is not covered by the scheme."""


class HardTemplateVariant(Enum):
    TECT1 = "translate from [L1] to [L2]:"
    TECT2 = "translate to [L2]:"
    TECT3 = "translate from [L1]:"
    TECT4 = "from [L1] to [L2]:"
    TECT5 = "[L2]:"

    @classmethod
    def from_number(cls, n):
        return cls[f"TECT{n}"]


class Compliance(Enum):
    EXACT = "exact"
    WRONG_DIRECTION = "wrong_direction"
    ABSENT = "absent"
    PARTIAL = "partial"


@dataclass(frozen=True)
class TriggerScheme:
    n_common: int
    n_specific: int
    targets: tuple
    token_format: str = "v1"

    def __post_init__(self):
        if self.n_common < 1 or self.n_specific < 1:
            raise ValueError("trigger counts must be positive")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError("duplicate target languages in scheme")
        if self.token_format != "v1":
            raise ValueError(f"unknown token format: {self.token_format!r}")

    @property
    def sequence_length(self):
        return self.n_common + self.n_specific

    def common_tokens(self):
        return [f"<act_c_{i}>" for i in range(self.n_common)]

    def specific_tokens(self, target):
        if target not in self.targets:
            raise UnknownTarget(target)
        return [f"<act_t_{target}_{j}>" for j in range(self.n_specific)]


@dataclass(frozen=True)
class VocabManifest:
    special_tokens: tuple
    scheme: TriggerScheme
    created_with: str = TOOL_VERSION

    def to_json(self):
        return json.dumps({
            "special_tokens": list(self.special_tokens),
            "scheme": {
                "common": self.scheme.n_common,
                "specific": self.scheme.n_specific,
                "targets": list(self.scheme.targets),
            },
            "created_with": self.created_with,
        }, ensure_ascii=False, indent=2)

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        scheme = TriggerScheme(
            n_common=obj["scheme"]["common"],
            n_specific=obj["scheme"]["specific"],
            targets=tuple(obj["scheme"]["targets"]),
        )
        return cls(tuple(obj["special_tokens"]), scheme, obj.get("created_with", ""))


def build_hard_prefix(variant, direction):
    """Descriptive prefix for one direction, e.g. "translate from French to German:"."""
    out = variant.value
    if "[L1]" in out:
        out = out.replace("[L1]", display_name(direction.src))
    out = out.replace("[L2]", display_name(direction.tgt))
    return out


def build_trigger_sequence(scheme, direction):
    """Token sequence for one direction: common tokens then target-specific ones."""
    return scheme.common_tokens() + scheme.specific_tokens(direction.tgt)


def build_manifest(scheme):
    """All special tokens of a scheme: common first, then specific per target."""
    if not scheme.targets:
        raise ValueError("scheme has no target languages")
    tokens = list(scheme.common_tokens())
    for tgt in scheme.targets:
        tokens.extend(scheme.specific_tokens(tgt))
    return VocabManifest(special_tokens=tuple(tokens), scheme=scheme)


def join_target(prefix, raw_target):
    """Compose the constrained target: prefix, single space, raw target.

    ``prefix`` is either a hard-prefix string or a trigger-token list; empty
    prefix returns the raw target unchanged.
    """
    if not prefix:
        return raw_target
    if isinstance(prefix, str):
        return f"{prefix} {raw_target}"
    return " ".join(prefix) + f" {raw_target}"


def _all_hard_prefixes(variant):
    """Every prefix the variant can produce over the registry, longest first."""
    seen = set()
    langs = [lc.code for lc in registry()]
    for src in langs:
        for tgt in langs:
            if src == tgt:
                continue
            seen.add(build_hard_prefix(variant, TranslationDirection(src, tgt)))
    return sorted(seen, key=len, reverse=True)


def _consume_triggers(text, known_tokens):
    """Split off the leading run of known special tokens."""
    consumed = []
    rest = text.lstrip()
    while True:
        matched = None
        for tok in known_tokens:
            if rest.startswith(tok):
                matched = tok
                break
        if matched is None:
            return consumed, rest
        consumed.append(matched)
        rest = rest[len(matched):].lstrip()


def strip_prefix(model_output, direction, variant=None, scheme=None):
    """Remove the expected constrained template from a model output.

    Exactly one of ``variant`` (hard prefix) or ``scheme`` (triggers) must be
    given. Returns (clean_text, Compliance). All outcomes are encoded in the
    compliance verdict; nothing raises on malformed output.
    """
    if (variant is None) == (scheme is None):
        raise ValueError("provide exactly one of variant or scheme")
    text = model_output.lstrip()
    if scheme is not None:
        return _strip_triggers(text, direction, scheme)
    return _strip_hard(text, direction, variant)


def _strip_triggers(text, direction, scheme):
    expected = build_trigger_sequence(scheme, direction)
    known = sorted(
        set(scheme.common_tokens())
        | {t for tgt in scheme.targets for t in scheme.specific_tokens(tgt)},
        key=len, reverse=True,
    )
    consumed, rest = _consume_triggers(text, known)
    if not consumed:
        return text, Compliance.ABSENT
    if consumed == expected:
        return rest, Compliance.EXACT
    foreign = {t for t in consumed if t.startswith("<act_t_") and t not in expected}
    if foreign:
        return rest, Compliance.WRONG_DIRECTION
    # only common tokens and/or the expected target's tokens, but not the
    # full expected sequence in order
    return rest, Compliance.PARTIAL


def _strip_hard(text, direction, variant):
    expected = build_hard_prefix(variant, direction)
    if text.startswith(expected):
        return text[len(expected):].lstrip(), Compliance.EXACT
    for candidate in _all_hard_prefixes(variant):
        if candidate != expected and text.startswith(candidate):
            return text[len(candidate):].lstrip(), Compliance.WRONG_DIRECTION
    words = expected.split()
    for k in range(len(words) - 1, 0, -1):
        head = " ".join(words[:k])
        if text == head or text.startswith(head + " "):
            return text[len(head):].lstrip(), Compliance.PARTIAL
    return text, Compliance.ABSENT
