"""Committed synthetic copy-translation task.

Sentences are random sequences over a small English vocabulary; the
"translation" substitutes each word with its fixed German or French
counterpart. Real words are used on the target side so the evaluator's
language detector behaves the same way it does on natural text.
"""

import random
from pathlib import Path

EN_WORDS = ("house stands near old river garden small child reads book "
            "under tree morning light falls over quiet village street "
            "market bread water stone bridge").split()
DE_WORDS = ("haus steht nahe alt fluss garten klein kind liest buch "
            "unter baum morgen licht fällt über ruhig dorf straße "
            "markt brot wasser stein brücke").split()
FR_WORDS = ("maison reste près vieux fleuve jardin petit enfant lit livre "
            "sous arbre matin lumière tombe sur calme village rue "
            "marché pain eau pierre pont").split()

MAPS = {"de": dict(zip(EN_WORDS, DE_WORDS)), "fr": dict(zip(EN_WORDS, FR_WORDS))}


def make_sentences(seed, count, min_len=4, max_len=8):
    rng = random.Random(seed)
    return [" ".join(rng.choice(EN_WORDS) for _ in range(rng.randint(min_len, max_len)))
            for _ in range(count)]


def translate(sentence, tgt_lang):
    mapping = MAPS[tgt_lang]
    return " ".join(mapping[w] for w in sentence.split())


def write_task(out_dir, seed=42, n_train=400, n_heldout=60):
    """Write en-de/en-fr train TSVs plus held-out TSVs; returns their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {}
    for i, tgt in enumerate(("de", "fr")):
        train = make_sentences(seed + i, n_train)
        heldout = make_sentences(seed + 100 + i, n_heldout)
        train_path = out_dir / f"en-{tgt}.tsv"
        heldout_path = out_dir / f"en-{tgt}.heldout.tsv"
        train_path.write_text(
            "".join(f"{s}\t{translate(s, tgt)}\n" for s in train), encoding="utf-8")
        heldout_path.write_text(
            "".join(f"{s}\t{translate(s, tgt)}\n" for s in heldout), encoding="utf-8")
        paths[tgt] = (train_path, heldout_path)
    return paths
