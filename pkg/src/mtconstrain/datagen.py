"""Assembly of training / validation / inference JSONL sets.

Targets are composed as trigger-sequence + raw target (act), hard prefix +
raw target (tect), or the raw target alone (plain). All sampling and
shuffling is keyed off an explicit seed so output bytes are reproducible.
"""

import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from . import templates
from .prompts import pick_prompt, render_prompt

EVAL_FRACTION = 0.1  # share of the validation split used during evaluation


class EmptyCorpus(ValueError):
    pass


@dataclass(frozen=True)
class TrainingRecord:
    id: str
    src_lang: str
    tgt_lang: str
    prompt_id: int
    input: str
    target: str
    raw_target: str
    prefix_tokens: tuple

    def to_row(self):
        row = asdict(self)
        row["prefix_tokens"] = list(self.prefix_tokens)
        return row


def _sub_rng(seed, *parts):
    return random.Random(":".join(str(p) for p in (seed, *parts)))


def _select_examples(corpus, cap, seed, split):
    if len(corpus) == 0:
        raise EmptyCorpus(str(corpus.direction))
    picked = list(corpus.examples)
    _sub_rng(seed, split, "sample", corpus.direction).shuffle(picked)
    return picked[: min(cap, len(picked))]


def _make_prefix(mode, scheme_or_variant, direction):
    """(prefix_tokens, target_prefix) for one record."""
    if mode == "plain":
        return (), ""
    if mode == "tect":
        return (), templates.build_hard_prefix(scheme_or_variant, direction)
    if mode == "act":
        return tuple(templates.build_trigger_sequence(scheme_or_variant, direction)), ""
    raise ValueError(f"unknown mode: {mode!r}")


def build_dataset(corpora, mode, scheme_or_variant=None, cap=2000, seed=42, split="train"):
    """Build one split of the instruction-tuning dataset.

    Returns (records, manifest). Per direction, at most ``cap`` examples
    survive a seeded subsample; each record gets an independently seeded
    prompt; the final order is a seeded global shuffle.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if mode != "plain" and scheme_or_variant is None:
        raise ValueError(f"mode {mode!r} requires a scheme or variant")

    records = []
    per_direction = {}
    counter = 0
    for corpus in corpora:
        direction = corpus.direction
        selected = _select_examples(corpus, cap, seed, split)
        per_direction[str(direction)] = len(selected)
        prefix_tokens, hard_prefix = _make_prefix(mode, scheme_or_variant, direction)
        for ex in selected:
            template = pick_prompt(f"{seed}:{split}", counter)
            counter += 1
            prefix = list(prefix_tokens) if prefix_tokens else hard_prefix
            records.append(TrainingRecord(
                id=ex.id,
                src_lang=direction.src,
                tgt_lang=direction.tgt,
                prompt_id=template.id,
                input=render_prompt(template, direction, ex.src_text),
                target=templates.join_target(prefix, ex.tgt_text),
                raw_target=ex.tgt_text,
                prefix_tokens=prefix_tokens,
            ))

    _sub_rng(seed, split, "shuffle").shuffle(records)

    manifest = {
        "mode": mode,
        "split": split,
        "cap": cap,
        "rng_seed": seed,
        "eval_fraction": EVAL_FRACTION,
        "per_direction_counts": dict(sorted(per_direction.items())),
        "total": len(records),
        "created_with": templates.TOOL_VERSION,
    }
    if mode == "tect":
        manifest["variant"] = scheme_or_variant.name
    elif mode == "act":
        manifest["scheme"] = {
            "common": scheme_or_variant.n_common,
            "specific": scheme_or_variant.n_specific,
            "targets": list(scheme_or_variant.targets),
        }
    return records, manifest


def build_inference_set(corpus, seed=42):
    """Inference records: rendered prompt input plus reference, no target prefix."""
    if len(corpus) == 0:
        raise EmptyCorpus(str(corpus.direction))
    direction = corpus.direction
    rows = []
    for counter, ex in enumerate(corpus.examples):
        template = pick_prompt(f"{seed}:infer", counter)
        rows.append({
            "id": ex.id,
            "src_lang": direction.src,
            "tgt_lang": direction.tgt,
            "prompt_id": template.id,
            "input": render_prompt(template, direction, ex.src_text),
            "src_text": ex.src_text,
            "raw_target": ex.tgt_text,
        })
    return rows


def rows_to_jsonl(rows):
    """Serialize rows (dicts or TrainingRecords) to a JSONL string."""
    lines = []
    for row in rows:
        if isinstance(row, TrainingRecord):
            row = row.to_row()
        lines.append(json.dumps(row, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def write_jsonl(rows, path):
    Path(path).write_text(rows_to_jsonl(rows), encoding="utf-8")


def read_jsonl(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rows.append(json.loads(line))
    return rows


def write_manifest(manifest, dataset_path):
    """Write "<dataset>.manifest.json" next to the dataset file."""
    path = Path(str(dataset_path) + ".manifest.json")
    path.write_text(json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    return path
