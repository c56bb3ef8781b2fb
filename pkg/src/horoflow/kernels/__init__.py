"""Backend selection for the hot numerical kernels.

The numba backend is used when importable; set HOROFLOW_KERNELS=numpy to
force the pure-numpy fallback (or HOROFLOW_KERNELS=numba to require JIT).
Both backends implement the same array contracts and are parity-tested.
"""

import os

from . import _numpy

_requested = os.environ.get("HOROFLOW_KERNELS", "").strip().lower()

if _requested == "numpy":
    _impl = _numpy
    BACKEND = "numpy"
else:
    try:
        from . import _numba as _impl  # noqa: F401

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        _impl = _numpy
        BACKEND = "numpy"

closed_frame = _impl.closed_frame
open_frame = _impl.open_frame
elementary = _impl.elementary
quotient_speed = _impl.quotient_speed


def backend_name() -> str:
    return BACKEND


def numpy_backend():
    """The reference backend, always available (used by the benchmark)."""
    return _numpy


def numba_backend():
    """The JIT backend, or None when numba is unavailable."""
    try:
        from . import _numba

        return _numba
    except ImportError:
        return None
