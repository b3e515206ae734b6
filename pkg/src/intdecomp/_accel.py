"""Numba switch.

Set ``INTDECOMP_DISABLE_NUMBA=1`` to run every kernel through its pure-numpy
implementation instead of the compiled one.
"""
import os

DISABLED = os.environ.get("INTDECOMP_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    numba = None
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and not DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise a no-op decorator.

    Kernels are always compiled when numba exists so the benchmark and the
    parity tests can reach both paths; ``USE_NUMBA`` only decides which path
    the library dispatches to.
    """
    if NUMBA_AVAILABLE:
        return numba.njit(*args, **kwargs)

    def wrap(func):
        return func

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return wrap
