"""N-gram counting kernels.

The compiled Cython extension is preferred when present; the pure-Python
module implements the identical API and is selected automatically when the
extension is missing or when ``MTCONSTRAIN_BACKEND=python`` is set.
"""

import os

from . import _pure

__all__ = [
    "BACKEND",
    "token_ngram_stats",
    "char_ngram_match_stats",
    "count_char_ngrams",
]

_forced = os.environ.get("MTCONSTRAIN_BACKEND", "").lower()

if _forced in ("", "c"):
    try:
        from . import _speed as _impl

        BACKEND = "c"
    except ImportError:
        if _forced == "c":
            raise
        _impl = _pure
        BACKEND = "python"
elif _forced == "python":
    _impl = _pure
    BACKEND = "python"
else:
    raise ValueError(f"unknown MTCONSTRAIN_BACKEND: {_forced!r}")

token_ngram_stats = _impl.token_ngram_stats
char_ngram_match_stats = _impl.char_ngram_match_stats
count_char_ngrams = _impl.count_char_ngrams
