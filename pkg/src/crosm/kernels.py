"""Kernel backend selection.

The compiled backend is used when it was built and ``CROSM_KERNELS`` is not
set to ``python``; otherwise the pure-Python kernels are used.
"""
import os

from . import _kernels_py

_impl = _kernels_py
if os.environ.get("CROSM_KERNELS", "").strip().lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
connection = _impl.connection
curvature_ops = _impl.curvature_ops
lower = _impl.lower
ricci = _impl.ricci
