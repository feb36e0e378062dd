"""Whitespace-token vocabulary with special-token extension."""

import json
from pathlib import Path

PAD, BOS, EOS, UNK = "<pad>", "<bos>", "<eos>", "<unk>"
RESERVED = (PAD, BOS, EOS, UNK)


class TokenCollision(ValueError):
    """A manifest special token already exists in the base vocabulary."""


class Vocab:
    def __init__(self, tokens):
        self.id_to_token = list(RESERVED) + [t for t in tokens if t not in RESERVED]
        self.token_to_id = {t: i for i, t in enumerate(self.id_to_token)}
        if len(self.token_to_id) != len(self.id_to_token):
            raise ValueError("duplicate tokens in vocabulary")

    def __len__(self):
        return len(self.id_to_token)

    def __contains__(self, token):
        return token in self.token_to_id

    @property
    def pad_id(self):
        return self.token_to_id[PAD]

    @property
    def bos_id(self):
        return self.token_to_id[BOS]

    @property
    def eos_id(self):
        return self.token_to_id[EOS]

    def encode(self, text):
        unk = self.token_to_id[UNK]
        return [self.token_to_id.get(t, unk) for t in text.split()]

    def decode(self, ids):
        special = {self.token_to_id[t] for t in (PAD, BOS, EOS)}
        return " ".join(self.id_to_token[i] for i in ids if i not in special)

    @classmethod
    def from_texts(cls, texts):
        seen = sorted({tok for text in texts for tok in text.split()})
        return cls(seen)

    def add_tokens(self, tokens):
        """Append new tokens; returns token -> fresh id. Collisions raise."""
        mapping = {}
        for token in tokens:
            if token in self.token_to_id:
                raise TokenCollision(token)
            new_id = len(self.id_to_token)
            self.id_to_token.append(token)
            self.token_to_id[token] = new_id
            mapping[token] = new_id
        return mapping

    def to_json(self):
        return json.dumps({"tokens": self.id_to_token[len(RESERVED):]})

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text)["tokens"])


def load_manifest_tokens(path):
    """Special tokens from an mtconstrain vocabulary-manifest JSON file."""
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    return list(obj["special_tokens"])
