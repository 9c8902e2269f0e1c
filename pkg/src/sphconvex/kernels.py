"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
numpy versions in ``_kernels_py`` are used. Setting ``SPHCONVEX_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("SPHCONVEX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

exit_angles = _impl.exit_angles
min_dot_rows = _impl.min_dot_rows
cone_project = _impl.cone_project

__all__ = ["BACKEND", "exit_angles", "min_dot_rows", "cone_project"]
