"""JSONL I/O and batching for the bridge."""

import json
from pathlib import Path

import torch


def read_jsonl(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rows.append(json.loads(line))
    return rows


def write_jsonl(rows, path):
    text = "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows)
    Path(path).write_text(text, encoding="utf-8")


def make_batches(pairs, vocab, batch_size, max_len):
    """Padded (src, tgt_in, tgt_out) tensors from (input, target) text pairs.

    Targets are wrapped in BOS ... EOS; every target token, trigger and hard
    prefix included, contributes to the loss.
    """
    encoded = []
    for src_text, tgt_text in pairs:
        src = vocab.encode(src_text)[:max_len]
        tgt = vocab.encode(tgt_text)[: max_len - 1]
        encoded.append((src, [vocab.bos_id] + tgt + [vocab.eos_id]))

    batches = []
    for start in range(0, len(encoded), batch_size):
        chunk = encoded[start:start + batch_size]
        src_width = max(len(s) for s, _ in chunk)
        tgt_width = max(len(t) for _, t in chunk) - 1
        src = torch.full((len(chunk), src_width), vocab.pad_id, dtype=torch.long)
        tgt_in = torch.full((len(chunk), tgt_width), vocab.pad_id, dtype=torch.long)
        tgt_out = torch.full((len(chunk), tgt_width), vocab.pad_id, dtype=torch.long)
        for i, (s, t) in enumerate(chunk):
            src[i, : len(s)] = torch.tensor(s)
            tgt_in[i, : len(t) - 1] = torch.tensor(t[:-1])
            tgt_out[i, : len(t) - 1] = torch.tensor(t[1:])
        batches.append((src, tgt_in, tgt_out))
    return batches
