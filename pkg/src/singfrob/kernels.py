"""Kernel selection: compiled extension when built, pure Python otherwise.

Set ``SINGFROB_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("SINGFROB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import add_scaled_terms, mul_terms, rref, shift_scale_terms

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import add_scaled_terms, mul_terms, rref, shift_scale_terms

__all__ = ["BACKEND", "add_scaled_terms", "mul_terms", "rref", "shift_scale_terms"]
