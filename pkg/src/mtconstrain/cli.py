"""Command-line pipeline: build-data, build-inference, simulate, strip,
evaluate, langid-train, langid-detect, manifest.

Every subcommand that writes an artifact also writes ``<artifact>.manifest.json``
echoing the full configuration, so downstream subcommands never need manual
file editing. Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

import json
import sys
from collections import Counter
from pathlib import Path

import click

from . import core, datagen, langid, metrics, mockmt, templates

_MODE_HELP = "plain | tect:<variant 1-5> | act:<n_common>,<n_specific>"


class _ValidationFailure(Exception):
    pass


def _fail(message):
    raise _ValidationFailure(message)


def _parse_mode(mode_str, targets):
    """Return (mode, variant, scheme) from a mode flag like "act:1,1"."""
    if mode_str == "plain":
        return "plain", None, None
    if mode_str.startswith("tect:"):
        try:
            n = int(mode_str.split(":", 1)[1])
            return "tect", templates.HardTemplateVariant.from_number(n), None
        except (ValueError, KeyError):
            _fail(f"bad tect variant in {mode_str!r}; expected tect:1 .. tect:5")
    if mode_str.startswith("act:"):
        try:
            c, s = (int(x) for x in mode_str.split(":", 1)[1].split(","))
        except ValueError:
            _fail(f"bad act scheme in {mode_str!r}; expected act:<common>,<specific>")
        if not targets:
            _fail("act mode needs at least one target language")
        try:
            return "act", None, templates.TriggerScheme(c, s, tuple(sorted(set(targets))))
        except ValueError as exc:
            _fail(str(exc))
    _fail(f"unknown mode {mode_str!r}; expected {_MODE_HELP}")


def _parse_pairs(pairs_str):
    directions = []
    for part in pairs_str.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            directions.append(core.TranslationDirection.parse(part))
        except (core.UnknownLanguage, core.DegenerateDirection, ValueError) as exc:
            _fail(f"bad pair {part!r}: {exc}")
    if not directions:
        _fail("no translation pairs given")
    return directions


def _load_pair_corpora(corpus_dir, directions, fmt, strict):
    corpora = []
    for d in directions:
        path = Path(corpus_dir) / f"{d.src}-{d.tgt}.{fmt}"
        if not path.exists():
            raise core.UnreadableFile(str(path))
        corpora.append(core.load_corpus(path, fmt, d, strict=strict))
    return corpora


def _write_manifest_for(path, subcommand, config, extra=None):
    manifest = {
        "subcommand": subcommand,
        "config": config,
        "created_with": templates.TOOL_VERSION,
    }
    if extra:
        manifest.update(extra)
    return datagen.write_manifest(manifest, path)


@click.group()
@click.version_option(version=templates.TOOL_VERSION.split("-")[-1], prog_name="mtconstrain")
def cli():
    """Constrained-template dataset builder and translation-error diagnostics."""


@cli.command("build-data")
@click.option("--mode", "mode_str", default="plain", show_default=True, help=_MODE_HELP)
@click.option("--pairs", required=True,
              help="Comma-separated directions, e.g. en-de,en-cs.")
@click.option("--corpus-dir", required=True, type=click.Path(exists=True, file_okay=False),
              help="Directory holding one <src>-<tgt>.<format> file per pair.")
@click.option("--format", "fmt", default="tsv", show_default=True,
              type=click.Choice(["tsv", "jsonl"]))
@click.option("--cap", default=2000, show_default=True, help="Max examples per direction.")
@click.option("--seed", default=42, show_default=True, help="RNG seed for sampling/shuffling.")
@click.option("--split", default="train", show_default=True)
@click.option("--strict/--lenient", default=False, show_default=True,
              help="Fail on malformed corpus rows instead of dropping them.")
@click.option("--out", required=True, type=click.Path(), help="Output dataset JSONL path.")
def build_data(mode_str, pairs, corpus_dir, fmt, cap, seed, split, strict, out):
    """Build one split of the instruction-tuning dataset."""
    directions = _parse_pairs(pairs)
    mode, variant, scheme = _parse_mode(mode_str, [d.tgt for d in directions])
    corpora = _load_pair_corpora(corpus_dir, directions, fmt, strict)
    records, manifest = datagen.build_dataset(
        corpora, mode, variant or scheme, cap=cap, seed=seed, split=split)
    datagen.write_jsonl(records, out)
    config = {"mode": mode_str, "pairs": pairs, "corpus_dir": str(corpus_dir),
              "format": fmt, "cap": cap, "seed": seed, "split": split,
              "strict": strict, "out": str(out)}
    _write_manifest_for(out, "build-data", config, extra=manifest)
    click.echo(f"wrote {len(records)} records to {out}")


@cli.command("build-inference")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--direction", required=True, help="Direction of the corpus, e.g. en-de.")
@click.option("--format", "fmt", default="tsv", show_default=True,
              type=click.Choice(["tsv", "jsonl"]))
@click.option("--seed", default=42, show_default=True)
@click.option("--strict/--lenient", default=False, show_default=True)
@click.option("--out", required=True, type=click.Path())
def build_inference(corpus_path, direction, fmt, seed, strict, out):
    """Build the inference set (rendered prompts plus references) for one direction."""
    d = core.TranslationDirection.parse(direction)
    corpus = core.load_corpus(corpus_path, fmt, d, strict=strict)
    rows = datagen.build_inference_set(corpus, seed=seed)
    datagen.write_jsonl(rows, out)
    config = {"corpus": str(corpus_path), "direction": direction, "format": fmt,
              "seed": seed, "strict": strict, "out": str(out)}
    _write_manifest_for(out, "build-inference", config,
                        extra={"rng_seed": seed, "total": len(rows)})
    click.echo(f"wrote {len(rows)} inference rows to {out}")


@cli.command("simulate")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Inference-set JSONL from build-inference.")
@click.option("--multiparallel", "mp_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON map id -> {lang: text}; required when --p-ot > 0.")
@click.option("--mode", "mode_str", default="plain", show_default=True, help=_MODE_HELP)
@click.option("--p-ot", default=0.0, show_default=True)
@click.option("--p-sc", default=0.0, show_default=True)
@click.option("--p-oug-over", default=0.0, show_default=True)
@click.option("--p-oug-under", default=0.0, show_default=True)
@click.option("--seed", default=42, show_default=True)
@click.option("--out", required=True, type=click.Path(), help="Predictions JSONL path.")
@click.option("--labels-out", type=click.Path(),
              help="Ground-truth labels JSONL path [default: <out>.labels.jsonl].")
def simulate(in_path, mp_path, mode_str, p_ot, p_sc, p_oug_over, p_oug_under,
             seed, out, labels_out):
    """Run the seeded mock translator with configurable injected error rates."""
    rows = datagen.read_jsonl(in_path)
    mode, variant, scheme = _parse_mode(mode_str, sorted({r["tgt_lang"] for r in rows}))
    multiparallel = {}
    if mp_path:
        multiparallel = json.loads(Path(mp_path).read_text(encoding="utf-8"))
    elif p_ot > 0:
        _fail("--p-ot > 0 requires --multiparallel")
    try:
        spec = mockmt.ErrorSpec(p_ot=p_ot, p_sc=p_sc, p_oug_over=p_oug_over,
                                p_oug_under=p_oug_under, seed=seed)
    except ValueError as exc:
        _fail(str(exc))
    preds, labels = mockmt.simulate(rows, multiparallel, spec,
                                    mode=mode, variant=variant, scheme=scheme)
    datagen.write_jsonl(preds, out)
    labels_out = labels_out or str(out) + ".labels.jsonl"
    datagen.write_jsonl(labels, labels_out)
    config = {"in": str(in_path), "multiparallel": str(mp_path) if mp_path else None,
              "mode": mode_str, "p_ot": p_ot, "p_sc": p_sc,
              "p_oug_over": p_oug_over, "p_oug_under": p_oug_under,
              "seed": seed, "out": str(out), "labels_out": str(labels_out)}
    _write_manifest_for(out, "simulate", config, extra={"total": len(preds)})
    click.echo(f"wrote {len(preds)} predictions to {out}")


@cli.command("strip")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Raw predictions JSONL (id, src_lang, tgt_lang, output).")
@click.option("--mode", "mode_str", required=True, help=_MODE_HELP)
@click.option("--out", required=True, type=click.Path(), help="Cleaned predictions JSONL path.")
def strip(in_path, mode_str, out):
    """Strip the constrained template from model outputs; print a compliance histogram."""
    rows = datagen.read_jsonl(in_path)
    mode, variant, scheme = _parse_mode(mode_str, sorted({r["tgt_lang"] for r in rows}))
    if mode == "plain":
        _fail("strip requires a tect or act mode")
    histogram = Counter()
    cleaned = []
    for row in rows:
        d = core.TranslationDirection(row["src_lang"], row["tgt_lang"])
        clean, comp = templates.strip_prefix(row["output"], d, variant=variant, scheme=scheme)
        histogram[comp.value] += 1
        cleaned.append({**row, "output": clean, "compliance": comp.value})
    datagen.write_jsonl(cleaned, out)
    config = {"in": str(in_path), "mode": mode_str, "out": str(out)}
    _write_manifest_for(out, "strip", config, extra={"compliance": dict(histogram)})
    for name in (c.value for c in templates.Compliance):
        click.echo(f"{name}: {histogram.get(name, 0)}")


@cli.command("evaluate")
@click.option("--preds", "preds_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Inference-set JSONL from build-inference.")
@click.option("--profiles", "profiles_dir", type=click.Path(exists=True, file_okay=False),
              help="Language-profile directory [default: bundled profiles].")
@click.option("--mode", "mode_str", default="plain", show_default=True, help=_MODE_HELP)
@click.option("--json-out", type=click.Path(), help="Also write the report as JSON.")
def evaluate(preds_path, dataset_path, profiles_dir, mode_str, json_out):
    """Score predictions: BLEU, chrF, OT/SC/OUG ratios, prefix compliance."""
    preds = datagen.read_jsonl(preds_path)
    dataset = datagen.read_jsonl(dataset_path)
    mode, variant, scheme = _parse_mode(mode_str, sorted({r["tgt_lang"] for r in dataset}))
    profiles = (langid.load_profiles(profiles_dir) if profiles_dir
                else langid.default_profiles())
    report = metrics.evaluate(preds, dataset, profiles,
                              mode=mode, variant=variant, scheme=scheme)
    click.echo(report.to_table())
    if json_out:
        Path(json_out).write_text(report.to_json() + "\n", encoding="utf-8")
        config = {"preds": str(preds_path), "dataset": str(dataset_path),
                  "profiles": str(profiles_dir) if profiles_dir else None,
                  "mode": mode_str, "json_out": str(json_out)}
        _write_manifest_for(json_out, "evaluate", config)
    expected_dirs = {f"{r['src_lang']}-{r['tgt_lang']}" for r in dataset}
    empty = sorted(d for d in expected_dirs
                   if report.per_direction.get(d, {}).get("n", 0) == 0)
    if empty:
        _fail(f"directions with no scored predictions: {', '.join(empty)}")


@cli.command("langid-train")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Plain-text training corpus for one language.")
@click.option("--lang", required=True, help="Language code for the profile.")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
def langid_train(in_path, lang, out_dir):
    """Train a character-n-gram language profile from a text file."""
    try:
        profile = langid.train_profile(lang, Path(in_path).read_text(encoding="utf-8"))
    except langid.InsufficientText as exc:
        _fail(str(exc))
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    out = langid.save_profile(profile, out_dir)
    config = {"in": str(in_path), "lang": lang, "out_dir": str(out_dir)}
    _write_manifest_for(out, "langid-train", config,
                        extra={"training_chars": profile.training_chars})
    click.echo(f"trained {lang} on {profile.training_chars} chars -> {out}")


@cli.command("langid-detect")
@click.option("--text", help="Text to classify (mutually exclusive with --in).")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False),
              help="File whose whole content is classified.")
@click.option("--profiles", "profiles_dir", type=click.Path(exists=True, file_okay=False),
              help="Language-profile directory [default: bundled profiles].")
@click.option("--top", default=3, show_default=True, help="How many candidates to print.")
def langid_detect(text, in_path, profiles_dir, top):
    """Rank profile languages for a text by naive-Bayes posterior."""
    if (text is None) == (in_path is None):
        _fail("provide exactly one of --text or --in")
    if in_path:
        text = Path(in_path).read_text(encoding="utf-8")
    profiles = (langid.load_profiles(profiles_dir) if profiles_dir
                else langid.default_profiles())
    try:
        result = langid.detect(text, profiles)
    except langid.EmptyText as exc:
        _fail(str(exc))
    for lang, posterior in result.ranked[:top]:
        click.echo(f"{lang}\t{posterior:.6f}")


@cli.command("manifest")
@click.option("--scheme", "scheme_str", default="1,1", show_default=True,
              help="Trigger scheme as <n_common>,<n_specific>.")
@click.option("--targets", required=True,
              help="Comma-separated target language codes, e.g. de,fr,zh.")
@click.option("--out", required=True, type=click.Path(), help="Vocabulary manifest JSON path.")
def manifest(scheme_str, targets, out):
    """Write the special-token vocabulary manifest for a trigger scheme."""
    try:
        c, s = (int(x) for x in scheme_str.split(","))
    except ValueError:
        _fail(f"bad scheme {scheme_str!r}; expected <n_common>,<n_specific>")
    target_list = tuple(sorted({t.strip() for t in targets.split(",") if t.strip()}))
    for t in target_list:
        if t not in {lc.code for lc in core.registry()}:
            _fail(f"unknown target language {t!r}")
    try:
        scheme = templates.TriggerScheme(c, s, target_list)
    except ValueError as exc:
        _fail(str(exc))
    vocab = templates.build_manifest(scheme)
    Path(out).write_text(vocab.to_json() + "\n", encoding="utf-8")
    config = {"scheme": scheme_str, "targets": targets, "out": str(out)}
    _write_manifest_for(out, "manifest", config,
                        extra={"token_count": len(vocab.special_tokens)})
    click.echo(f"wrote {len(vocab.special_tokens)} special tokens to {out}")


def main(argv=None):
    try:
        return cli.main(args=argv, standalone_mode=False) or 0
    except _ValidationFailure as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.exceptions.Abort:
        return 1
    except core.MalformedRow as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (core.CorpusError, OSError, json.JSONDecodeError) as exc:
        click.echo(f"i/o error: {exc}", err=True)
        return 2
    except (core.UnknownLanguage, core.DegenerateDirection, ValueError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
