"""Dynamic-programming kernels with a compiled core and a numpy fallback.

The Cython extension is used when it was built at install time; set
GAZE3D_PURE_PYTHON=1 to force the numpy implementation (used by the
benchmark and the parity tests).
"""

import os

if os.environ.get("GAZE3D_PURE_PYTHON") == "1":
    from gaze3d._kernels import _py as _impl

    BACKEND = "python"
else:
    try:
        from gaze3d._kernels import _ckernels as _impl

        BACKEND = "c"
    except ImportError:
        from gaze3d._kernels import _py as _impl

        BACKEND = "python"

levenshtein_kernel = _impl.levenshtein
nw_score_kernel = _impl.nw_score
align_cost_kernel = _impl.align_cost

__all__ = [
    "BACKEND",
    "levenshtein_kernel",
    "nw_score_kernel",
    "align_cost_kernel",
]
