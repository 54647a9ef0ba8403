"""Selects between numba-compiled kernels and the plain numpy path.

Set ``BRAIDEXP_DISABLE_NUMBA=1`` before import to force the numpy fallback.
"""
import os

DISABLED = os.environ.get("BRAIDEXP_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    _njit = None

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def jit(fn):
    """Compile ``fn`` with numba when available, else return None."""
    if not HAVE_NUMBA:
        return None
    return _njit(cache=True)(fn)
