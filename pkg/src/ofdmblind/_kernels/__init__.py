"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set OFDMBLIND_PURE_PYTHON=1 to force the numpy fallback (used by the benchmark
and to run the test suite against both implementations).
"""
from __future__ import annotations

import os

from . import _reference

BACKEND = "python"

if not os.environ.get("OFDMBLIND_PURE_PYTHON"):
    try:
        from . import _fast  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _fast = None  # type: ignore[assignment]
else:
    _fast = None  # type: ignore[assignment]

if BACKEND == "compiled":
    progression_search = _fast.progression_search
    autocorr_scan = _fast.autocorr_scan
else:
    progression_search = _reference.progression_search
    autocorr_scan = _reference.autocorr_scan


def available_backends() -> dict:
    """Name -> module for every importable backend (used by the benchmark)."""
    import importlib

    out = {"python": _reference}
    try:
        out["compiled"] = importlib.import_module("._fast", __name__)
    except ImportError:
        pass
    return out
