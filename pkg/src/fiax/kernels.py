"""Kernel selection: compiled extension when importable, else pure Python.

Set FIAX_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("FIAX_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

rref_rows = _impl.rref_rows
spmm = _impl.spmm
spadd = _impl.spadd


def use(backend):
    """Switch backend at runtime (benchmarks and tests)."""
    global rref_rows, spmm, spadd, BACKEND, _impl
    if backend == "python":
        _impl = _kernels_py
    elif backend == "cython":
        from . import _kernels as mod
        _impl = mod
    else:
        raise ValueError(backend)
    BACKEND = backend
    rref_rows, spmm, spadd = _impl.rref_rows, _impl.spmm, _impl.spadd
