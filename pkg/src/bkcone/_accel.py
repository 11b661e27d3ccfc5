"""Selection between numba-compiled kernels and their pure-numpy fallbacks.

Set ``BKCONE_DISABLE_NUMBA=1`` to force the numpy path.  The choice is read
once at import; :func:`set_backend` switches it at runtime (used by the
benchmark and by the parity tests).
"""
from __future__ import annotations

import os

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

_FLAG = os.environ.get("BKCONE_DISABLE_NUMBA", "").strip().lower()
_use_numba = _numba is not None and _FLAG not in ("1", "true", "yes", "on")


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged."""
    if _numba is None:
        return func
    return _numba.njit(cache=True)(func)


def numba_enabled() -> bool:
    return _use_numba


def set_backend(name: str) -> None:
    """Select ``"numba"`` or ``"numpy"`` for subsequent kernel calls."""
    global _use_numba
    if name == "numba":
        if _numba is None:
            raise RuntimeError("numba is not importable")
        _use_numba = True
    elif name == "numpy":
        _use_numba = False
    else:
        raise ValueError(f"unknown backend {name!r}")


def backend() -> str:
    return "numba" if _use_numba else "numpy"
