"""Selects the array-kernel backend for modmult.batch.

Set MODMULT_BACKEND to "numba", "numpy", or "auto" (default) before the
first import.  "auto" means numba-compiled kernels when numba is importable
and the pure-numpy fallbacks otherwise; "numba" fails loudly if numba is
missing instead of silently degrading.
"""

import os

VALID_BACKENDS = ("auto", "numba", "numpy")

_active: str | None = None


def requested_backend() -> str:
    value = os.environ.get("MODMULT_BACKEND", "auto").strip().lower()
    if value not in VALID_BACKENDS:
        raise ValueError(
            f"MODMULT_BACKEND must be one of {VALID_BACKENDS}, got {value!r}"
        )
    return value


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def active_backend() -> str:
    """The backend in effect, resolving "auto"; cached after the first call."""
    global _active
    if _active is None:
        requested = requested_backend()
        if requested == "numpy":
            _active = "numpy"
        elif requested == "numba":
            if not numba_available():
                raise ImportError(
                    "MODMULT_BACKEND=numba but numba is not installed"
                )
            _active = "numba"
        else:
            _active = "numba" if numba_available() else "numpy"
    return _active


def load_impl():
    """Import and return the kernel module for the active backend."""
    if active_backend() == "numba":
        from . import _batch_numba as impl
    else:
        from . import _batch_numpy as impl
    return impl
