"""Optional numba acceleration.

Set QDIMER_DISABLE_NUMBA=1 to force the pure-numpy paths. Callers look at USING_NUMBA
and pick between the compiled kernel and its numpy twin; both must give the same answer.
"""

from __future__ import annotations

import os

DISABLED = os.environ.get("QDIMER_DISABLE_NUMBA", "").strip() not in ("", "0")

try:
    import numba
except ImportError:  # numba is optional at runtime
    numba = None

USING_NUMBA = numba is not None and not DISABLED


def njit(*args, **kwargs):
    """numba.njit when acceleration is on, otherwise leave the function as plain Python."""
    if USING_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn


def backend() -> str:
    return "numba" if USING_NUMBA else "numpy"
