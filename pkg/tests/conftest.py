"""Shared fixtures: the bundled multiparallel sentences, synthetic parallel
corpora tiled from them, and the shipped language profiles."""

import json
from importlib import resources

import pytest

from mtconstrain import core, langid

EVAL_LANGS = ("cs", "de", "en", "fr", "hi", "ro", "ru", "uk", "zh")


@pytest.fixture(scope="session")
def multiparallel():
    """Sentence-id -> {lang: text} for the nine evaluation languages."""
    path = resources.files("mtconstrain") / "fixtures" / "multiparallel.json"
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def profiles():
    return langid.default_profiles()


def tile_corpus(multiparallel, src, tgt, n_rows):
    """A parallel Corpus of n_rows built by cycling the multiparallel sentences.

    Row ids follow load_corpus numbering ("{src}{tgt}-{row}", zero-based), so
    sentence_for_id below can recover each row's multiparallel entry.
    """
    sids = sorted(multiparallel)
    direction = core.TranslationDirection(src, tgt)
    examples = []
    for i in range(n_rows):
        sentence = multiparallel[sids[i % len(sids)]]
        examples.append(core.ParallelExample(
            id=f"{src}{tgt}-{i}",
            direction=direction,
            src_text=sentence[src],
            tgt_text=sentence[tgt],
        ))
    return core.Corpus(examples=examples, direction=direction,
                       meta={"source": "tiled-multiparallel", "drop_count": 0})


def multiparallel_by_row_id(multiparallel, corpus):
    """Map each tiled-corpus row id back to its {lang: text} sentence."""
    sids = sorted(multiparallel)
    return {
        ex.id: multiparallel[sids[i % len(sids)]]
        for i, ex in enumerate(corpus.examples)
    }


def write_tsv(corpus, path):
    lines = [f"{ex.src_text}\t{ex.tgt_text}" for ex in corpus.examples]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
