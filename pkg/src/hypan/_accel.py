"""Optional numba acceleration.

Set ``HYPAN_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when numba
is installed. The flag is read once, at import.
"""
import os

_FLAG = os.environ.get("HYPAN_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _FLAG in {"1", "true", "yes", "on"}

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED_BY_ENV


def njit(fn):
    """Compile ``fn`` in nopython mode if numba is importable, else return it."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
