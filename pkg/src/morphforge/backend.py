"""Kernel backend selection.

Hot per-pixel loops (triangle rasterization, inverse-affine bilinear sampling)
exist twice: a numba @njit version and a vectorized pure-numpy version. Both
compute the same expressions in the same order, so their outputs are
bit-identical; ``MORPHFORGE_BACKEND`` picks which one runs:

    auto   use numba when importable (default)
    numba  require numba, fail loudly if missing
    numpy  force the pure-numpy path
"""

from __future__ import annotations

import os

_ENV_VAR = "MORPHFORGE_BACKEND"
_VALID = ("auto", "numba", "numpy")


def requested_backend() -> str:
    value = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if value not in _VALID:
        raise ValueError(f"{_ENV_VAR} must be one of {_VALID}, got {value!r}")
    return value


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def use_numba() -> bool:
    """Resolve the env flag to a concrete backend choice for this call."""
    mode = requested_backend()
    if mode == "numpy":
        return False
    if mode == "numba":
        if not numba_available():
            raise RuntimeError(f"{_ENV_VAR}=numba but numba is not importable")
        return True
    return numba_available()
