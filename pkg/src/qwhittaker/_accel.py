"""JIT switch for the integer kernels.

Set ``QWHITTAKER_NO_NUMBA=1`` to force the pure-numpy path (also used when
numba is not importable).  The flag is read once, at import time.
"""
import os

_disabled = os.environ.get("QWHITTAKER_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


njit = _njit


def backend():
    return "numba" if HAVE_NUMBA else "numpy"
