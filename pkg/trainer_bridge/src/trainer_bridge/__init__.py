"""Toy-scale trainer bridge.

Consumes the dataset JSONL and vocabulary-manifest formats produced by the
``mtconstrain`` CLI, fine-tunes a small encoder-decoder on the full
constrained target (trigger/prefix tokens included in the loss), beam-decodes,
and writes predictions JSONL back in the format the ``mtconstrain`` evaluator
expects. Outputs are emitted raw: stripping and scoring stay on the
evaluator's side.
"""

__version__ = "0.1.0"
