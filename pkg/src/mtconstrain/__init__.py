"""Constrained-template dataset construction and translation-error diagnostics.

Subpackages/modules:

- ``core``      language registry, directions, parallel-corpus I/O
- ``prompts``   the fixed instruction-prompt bank
- ``templates`` hard prefixes, trigger-token schemes, decode-time stripping
- ``datagen``   seeded dataset / inference-set assembly (JSONL + manifest)
- ``langid``    character-n-gram naive-Bayes language identification
- ``metrics``   BLEU, chrF, off-target / source-copy / over-under diagnostics
- ``mockmt``    seeded mock translator with labeled injected errors
- ``cli``       the ``mtconstrain`` command-line pipeline
"""

from .templates import TOOL_VERSION

__version__ = TOOL_VERSION.split("-")[-1]

__all__ = ["__version__", "TOOL_VERSION"]
