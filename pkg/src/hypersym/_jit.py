"""numba switch.

Set ``HYPERSYM_DISABLE_NUMBA=1`` to force the pure-numpy code paths (useful
for debugging and for the benchmark that compares both).
"""

import os

USE_NUMBA = os.environ.get("HYPERSYM_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        import numba as nb
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def njit(*args, **kwargs):
    if USE_NUMBA:
        kwargs.setdefault("cache", True)
        return nb.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]
    return lambda func: func
