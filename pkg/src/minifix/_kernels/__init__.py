"""Kernel backend selection.

The compiled extension is preferred when importable; MINIFIX_PURE=1
forces the pure-Python fallback.  Both backends implement ted_dist and
pacv_sq_dist with identical results.
"""

from __future__ import annotations

import os

from . import pure


def _select():
    if os.environ.get("MINIFIX_PURE"):
        return pure
    try:
        from . import _speedups  # type: ignore[attr-defined]
        return _speedups
    except ImportError:
        return pure


backend = _select()

BACKEND_NAME: str = backend.NAME
USING_COMPILED: bool = BACKEND_NAME == "compiled"

ted_dist = backend.ted_dist
pacv_sq_dist = backend.pacv_sq_dist
