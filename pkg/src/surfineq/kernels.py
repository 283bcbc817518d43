"""Kernel dispatch: the compiled extension when built, numpy otherwise.

Set ``SURFINEQ_PURE_PYTHON=1`` to force the fallback.
"""

import os

from ._ext import fallback

BACKEND = "python"
reflected_diameter = fallback.reflected_diameter
convex_margin = fallback.convex_margin

if not os.environ.get("SURFINEQ_PURE_PYTHON"):
    try:
        from ._ext import kernels as _compiled
    except ImportError:
        pass
    else:
        reflected_diameter = _compiled.reflected_diameter
        convex_margin = _compiled.convex_margin
        BACKEND = "cython"

__all__ = ["BACKEND", "reflected_diameter", "convex_margin", "fallback"]
