"""Shared fixture: synthetic task assets built through the evaluator CLI.

The bridge talks to the evaluator package only through its published
interfaces — the CLI and the JSONL/manifest file formats — so this fixture
shells out to ``mtconstrain`` rather than importing it.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bridge_helpers import run_mtconstrain
from trainer_bridge import synthetic


@pytest.fixture(scope="session")
def task(tmp_path_factory):
    """Synthetic copy-translation assets: datasets, manifest, inference sets."""
    root = tmp_path_factory.mktemp("task")
    corpora = root / "corpora"
    synthetic.write_task(corpora, seed=42)

    act_dataset = root / "train_act.jsonl"
    plain_dataset = root / "train_plain.jsonl"
    manifest = root / "vocab.json"
    run_mtconstrain("build-data", "--mode", "act:1,1", "--pairs", "en-de,en-fr",
                    "--corpus-dir", str(corpora), "--out", str(act_dataset))
    run_mtconstrain("build-data", "--mode", "plain", "--pairs", "en-de,en-fr",
                    "--corpus-dir", str(corpora), "--out", str(plain_dataset))
    run_mtconstrain("manifest", "--scheme", "1,1", "--targets", "de,fr",
                    "--out", str(manifest))

    inference = root / "inference.jsonl"
    with open(inference, "w", encoding="utf-8") as combined:
        for tgt in ("de", "fr"):
            heldout = corpora / f"en-{tgt}.heldout.tsv"
            per_dir = root / f"infer_{tgt}.jsonl"
            run_mtconstrain("build-inference", "--corpus", str(heldout),
                            "--direction", f"en-{tgt}", "--out", str(per_dir))
            combined.write(per_dir.read_text(encoding="utf-8"))

    return {"root": root, "act_dataset": act_dataset,
            "plain_dataset": plain_dataset, "manifest": manifest,
            "inference": inference}
