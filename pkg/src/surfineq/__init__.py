"""Numerical checks of mean-curvature inequalities for surfaces of revolution."""

from .axisym import (
    GeneratingCurve,
    ProfileError,
    SurfaceQuantities,
    axial_stats,
    diameter,
    mean_curvature,
    segment_deviation,
    simon_report,
    surface_quantities,
    topping_deficit,
    validate_generating_curve,
    width,
)
from .convex import convex_inequality_suite, convex_metrics, degeneracy, mean_width_total_H, radii
from .curve import AngleFunction, CurveError, PlaneCurve, constants, extremal_curve, reconstruct
from .families import FAMILIES, make_family, singular_limit
from .flow import analytic_rate, fd_rate, mcf_step, rate_check
from .kernels import BACKEND
from .rearrange import comparison_report, encloses, first_rearrangement, second_rearrangement
from .reports import InequalityReport, VerificationFailure

__version__ = "0.1.0"
