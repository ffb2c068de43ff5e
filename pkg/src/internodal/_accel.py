"""Backend selection for the Monte Carlo kernels.

Set ``INTERNODAL_BACKEND=numpy`` to force the pure-numpy path. The default is
numba when it can be imported. Both paths draw the same random numbers and
produce the same samples up to last-bit differences in libm trig functions.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

BACKEND_ENV = "INTERNODAL_BACKEND"
HAVE_NUMBA = numba is not None


def requested_backend() -> str:
    name = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


def njit(fn=None, **kwargs):
    """``numba.njit(nogil=True, cache=True)``, or identity without numba."""
    opts = {"nogil": True, "cache": True}
    opts.update(kwargs)

    def wrap(f):
        if numba is None:
            return f
        return numba.njit(**opts)(f)

    return wrap(fn) if fn is not None else wrap


def jitable(fn):
    """Mark a helper as callable from jitted code while staying plain Python."""
    if numba is None:
        return fn
    from numba.extending import register_jitable

    return register_jitable(fn)
