"""Command line: train a bridge model and decode an inference set."""

import click

from . import synthetic
from .data import read_jsonl, write_jsonl
from .predict import VocabMismatch, predict
from .train import BridgeConfig, load_checkpoint, save_checkpoint, train
from .vocab import TokenCollision


@click.group()
@click.version_option(package_name="trainer-bridge")
def cli():
    """Toy trainer for constrained-template translation datasets."""


@cli.command("train")
@click.option("--dataset", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Training dataset JSONL (build-data output).")
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False),
              help="Vocabulary-manifest JSON with the trigger special tokens.")
@click.option("--preset", default="tiny", show_default=True,
              type=click.Choice(["tiny", "small"]))
@click.option("--epochs", default=30, show_default=True)
@click.option("--lr", default=2e-5, show_default=True)
@click.option("--batch-size", default=64, show_default=True)
@click.option("--seed", default=42, show_default=True)
@click.option("--out", required=True, type=click.Path(), help="Checkpoint path.")
def train_cmd(dataset, manifest, preset, epochs, lr, batch_size, seed, out):
    """Fine-tune the toy model on a dataset JSONL."""
    config = BridgeConfig(dataset=dataset, manifest=manifest, preset=preset,
                          epochs=epochs, lr=lr, batch_size=batch_size, seed=seed)
    checkpoint = train(config)
    save_checkpoint(checkpoint, out)
    history = checkpoint["loss_history"]
    summary = (f"loss {history[0]:.4f} -> {history[-1]:.4f} over {len(history)} epochs"
               if history else "no training epochs")
    click.echo(f"saved checkpoint to {out} ({summary})")


@cli.command("predict")
@click.option("--checkpoint", "checkpoint_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Inference-set JSONL (build-inference output).")
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False),
              help="Verify the checkpoint carries these special tokens.")
@click.option("--beam-size", default=5, show_default=True)
@click.option("--out", required=True, type=click.Path(), help="Predictions JSONL path.")
def predict_cmd(checkpoint_path, in_path, manifest, beam_size, out):
    """Beam-decode an inference set into raw predictions JSONL."""
    checkpoint = load_checkpoint(checkpoint_path)
    rows = read_jsonl(in_path)
    preds = predict(checkpoint, rows, beam_size=beam_size,
                    expected_manifest=manifest)
    write_jsonl(preds, out)
    click.echo(f"wrote {len(preds)} predictions to {out}")


@cli.command("make-task")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--seed", default=42, show_default=True)
def make_task(out_dir, seed):
    """Write the synthetic copy-translation TSV corpora."""
    paths = synthetic.write_task(out_dir, seed=seed)
    for tgt, (train_path, heldout_path) in paths.items():
        click.echo(f"en-{tgt}: {train_path} / {heldout_path}")


def main(argv=None):
    try:
        return cli.main(args=argv, standalone_mode=False) or 0
    except (TokenCollision, VocabMismatch, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
