"""Kernel backend selection.

The compiled backend is preferred when present; set FAIRSLICE_PURE=1 to force
the pure-Python twin. Both expose identical functions with identical results.
"""
from __future__ import annotations

import os

if os.environ.get("FAIRSLICE_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
det_int = _impl.det_int
det_cols = _impl.det_cols
dets_cols = _impl.dets_cols
det_sum_cols = _impl.det_sum_cols
