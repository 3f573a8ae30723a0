"""Gate kernels, numba-compiled when available.

``BACKEND`` names the active implementation ("numba" or "numpy"). Both
implementations stay importable so they can be compared directly.
"""
from .._accel import USE_NUMBA
from . import _numpy as numpy_kernels

if USE_NUMBA:
    from . import _numba as numba_kernels

    BACKEND = "numba"
    _impl = numba_kernels
else:
    numba_kernels = None
    BACKEND = "numpy"
    _impl = numpy_kernels

apply_1q = _impl.apply_1q
apply_mcx = _impl.apply_mcx
apply_phase = _impl.apply_phase
apply_dense = _impl.apply_dense

__all__ = [
    "BACKEND",
    "apply_1q",
    "apply_mcx",
    "apply_phase",
    "apply_dense",
    "numpy_kernels",
    "numba_kernels",
]
