"""Backend selection for the numeric kernels.

Set ``WARING_DISABLE_NUMBA=1`` in the environment to force the pure-numpy
path even when numba is importable.
"""

import os

_FLAG = os.environ.get("WARING_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _FLAG in {"1", "true", "yes", "on"}

HAVE_NUMBA = False
if not NUMBA_DISABLED:
    try:
        import numba  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def njit(fn):
    """Compile ``fn`` with numba when available, else return it unchanged."""
    if not HAVE_NUMBA:
        return fn
    from numba import njit as _njit

    return _njit(cache=True, fastmath=False)(fn)
