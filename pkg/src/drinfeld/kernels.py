"""Kernel selection: the compiled extension when it was built, else pure Python.

Set DRINFELD_PURE_PYTHON=1 to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
omega_histogram = _kernels_py.omega_histogram

if not os.environ.get("DRINFELD_PURE_PYTHON"):
    try:
        from . import _kernels

        omega_histogram = _kernels.omega_histogram
        BACKEND = "cython"
    except ImportError:
        pass
