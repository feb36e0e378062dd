"""Builds the optional C extension for the n-gram kernels.

The package works without the extension (pure-Python fallback is selected
at import time), so a failed compile is downgraded to a warning.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/mtconstrain/_kernels/_speed.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    warnings.warn(f"skipping C kernel build, pure-Python fallback will be used: {exc}")

setup(ext_modules=ext_modules)
