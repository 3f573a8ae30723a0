"""Numba availability switch.

Set ``QIBAM_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is installed. The flag is read once, at import time.
"""
import os

_FLAG = "QIBAM_DISABLE_NUMBA"

DISABLED_BY_ENV = os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}

try:
    import numba  # noqa: F401

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and not DISABLED_BY_ENV
