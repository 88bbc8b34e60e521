"""Selects the compiled kernels when available.

Set RTQ_PURE_PYTHON=1 to force the pure-Python versions (the test suite
runs both and checks they agree).
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"

if not os.environ.get("RTQ_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

expand_compositions = _impl.expand_compositions
half_turns = _impl.half_turns

__all__ = ["BACKEND", "expand_compositions", "half_turns"]
