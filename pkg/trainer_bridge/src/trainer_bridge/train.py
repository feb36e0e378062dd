"""Training loop: teacher-forced NLL over the full constrained target."""

import random
from dataclasses import dataclass, field

import torch
from torch import nn

from .data import make_batches, read_jsonl
from .model import Seq2Seq, extend_vocab
from .vocab import Vocab, load_manifest_tokens


@dataclass
class BridgeConfig:
    dataset: str
    manifest: str = None          # vocabulary-manifest JSON; None for plain mode
    preset: str = "tiny"          # tiny | small
    epochs: int = 30
    lr: float = 2e-5              # cosine-annealed
    beam_size: int = 5
    out: str = "predictions.jsonl"
    seed: int = 42
    batch_size: int = 64
    max_len: int = 48
    patience: int = 5             # early stopping on epoch training loss
    history: list = field(default_factory=list, repr=False)


def train(config):
    """Fine-tune on the dataset JSONL and return an in-memory checkpoint.

    The base vocabulary is built from the rendered inputs and the raw
    targets; trigger tokens come exclusively from the manifest, so a token
    already present in the corpus raises TokenCollision.
    """
    torch.manual_seed(config.seed)
    random.seed(config.seed)
    rows = read_jsonl(config.dataset)
    if not rows:
        raise ValueError(f"empty dataset: {config.dataset}")

    vocab = Vocab.from_texts(
        [r["input"] for r in rows] + [r["raw_target"] for r in rows])
    model = Seq2Seq(len(vocab), vocab.pad_id, preset=config.preset)
    manifest_tokens = []
    if config.manifest is not None:
        manifest_tokens = load_manifest_tokens(config.manifest)
        extend_vocab(model, vocab, manifest_tokens, seed=config.seed)

    pairs = [(r["input"], r["target"]) for r in rows]
    loss_fn = nn.CrossEntropyLoss(ignore_index=vocab.pad_id)
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.lr)
    scheduler = torch.optim.lr_scheduler.CosineAnnealingLR(
        optimizer, T_max=max(config.epochs, 1))

    best = float("inf")
    stale = 0
    rng = random.Random(config.seed)
    model.train()
    for _ in range(config.epochs):
        rng.shuffle(pairs)
        batches = make_batches(pairs, vocab, config.batch_size, config.max_len)
        total = count = 0.0
        for src, tgt_in, tgt_out in batches:
            optimizer.zero_grad()
            logits = model(src, tgt_in)
            loss = loss_fn(logits.reshape(-1, logits.size(-1)), tgt_out.reshape(-1))
            loss.backward()
            torch.nn.utils.clip_grad_norm_(model.parameters(), 1.0)
            optimizer.step()
            total += loss.item() * len(src)
            count += len(src)
        scheduler.step()
        epoch_loss = total / count
        config.history.append(epoch_loss)
        if epoch_loss < best - 1e-4:
            best = epoch_loss
            stale = 0
        else:
            stale += 1
            if stale >= config.patience:
                break

    return {
        "model_state": model.state_dict(),
        "vocab_json": vocab.to_json(),
        "preset": config.preset,
        "manifest_tokens": manifest_tokens,
        "seed": config.seed,
        "loss_history": list(config.history),
    }


def save_checkpoint(checkpoint, path):
    torch.save(checkpoint, path)


def load_checkpoint(path):
    return torch.load(path, weights_only=False)
