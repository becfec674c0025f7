"""Numba switch.

Set ``RCC5_DISABLE_NUMBA=1`` to run every kernel on its numpy/pure-Python
path. The flag is read once at import.
"""
import os

_FLAG = os.environ.get("RCC5_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG in ("1", "true", "yes", "on")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED

numba_default = {
    "nogil": True,
    "cache": True,
}


def njit(fn):
    """Compile ``fn`` with numba when it is importable, else return it as is.

    Compilation happens on first call, so merely defining kernels is cheap
    even when the fallback path is selected.
    """
    if numba is None:
        return fn
    return numba.njit(**numba_default)(fn)
