"""Angle rearrangements that push a surface of revolution towards convexity.

The folded angle ``theta_sharp = dist(theta, 2 pi Z)`` keeps ``x`` and
``int |H|`` and can only stretch vertical distances. Sorting the folded
samples gives a convex profile ``theta_star`` with no larger ``int |H|`` and
no smaller diameter, which moreover encloses the folded profile and, after
an axial translation, the original one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import kernels
from .axisym import GeneratingCurve, surface_quantities, validate_generating_curve
from .curve import AngleFunction, CurveError
from .reports import InequalityReport, VerificationFailure

RANGE_TOL = 1e-12


def first_rearrangement(angle: AngleFunction) -> AngleFunction:
    """Fold the angle into ``[0, pi]`` by its distance to ``2 pi Z``.

    The derivative is carried by the chain rule, so the folded curve has
    pointwise the same ``|sin + theta_s x|`` as the original.
    """
    th = angle.theta
    k = np.round(th / (2 * math.pi))
    r = th - 2 * math.pi * k
    sign = np.where(r < 0, -1.0, 1.0)
    d = sign * angle.derivative()
    return AngleFunction(angle.length, np.abs(r), d)


def _check_range(th: np.ndarray) -> None:
    lo, hi = float(th.min()), float(th.max())
    if lo < -RANGE_TOL or hi > math.pi + RANGE_TOL:
        raise CurveError(f"angle range [{lo:.6g}, {hi:.6g}] is not inside [0, pi]")


def second_rearrangement(angle: AngleFunction) -> AngleFunction:
    """Nondecreasing rearrangement of the samples (a permutation)."""
    _check_range(angle.theta)
    return AngleFunction(angle.length, np.sort(angle.theta, kind="stable"))


def restricted_rearrangement(angle: AngleFunction, s_dagger: float) -> AngleFunction:
    """Nondecreasing rearrangement of ``theta`` restricted to ``[0, s_dagger]``.

    ``s_dagger`` is rounded to the nearest grid node.
    """
    _check_range(angle.theta)
    if not 0 < s_dagger <= angle.length * (1 + 1e-12):
        raise CurveError(f"s_dagger must lie in (0, {angle.length}], got {s_dagger}")
    m = int(round(s_dagger / angle.h))
    m = min(max(m, 2), angle.n)
    return AngleFunction(m * angle.h, np.sort(angle.theta[: m + 1], kind="stable"))


def convex_polygon(g: GeneratingCurve) -> tuple[np.ndarray, np.ndarray]:
    """The profile and its mirror image as a counterclockwise polygon."""
    x = np.concatenate([g.x, -g.x[-2:0:-1]])
    z = np.concatenate([g.z, g.z[-2:0:-1]])
    return x, z


def enclosure_margin(convex: GeneratingCurve, inner: GeneratingCurve,
                     shift: float = 0.0) -> np.ndarray:
    """Signed distance of each point of ``inner`` (raised by ``shift``) to
    the boundary of ``convex``, positive inside."""
    if not convex.is_convex():
        raise CurveError("first argument must have a nondecreasing angle from 0 to pi")
    vx, vz = convex_polygon(convex)
    cx, cz = 0.0, 0.5 * (float(vz.max()) + float(vz.min()))
    return kernels.convex_margin(
        np.ascontiguousarray(vx), np.ascontiguousarray(vz), cx, cz,
        np.ascontiguousarray(inner.x), np.ascontiguousarray(inner.z + shift),
    )


def best_axial_shift(convex: GeneratingCurve, inner: GeneratingCurve,
                     grid: int = 64) -> tuple[float, float]:
    """Axial translation of ``inner`` maximising its worst enclosure margin.

    The margin is close to concave in the shift (signed distance to a convex
    set is concave), so a coarse scan followed by a bounded Brent search on
    the best bracket suffices. Returns ``(shift, margin)``.
    """
    span = float(convex.z.max() - convex.z.min()) + float(inner.z.max() - inner.z.min())

    def worst(t):
        return float(enclosure_margin(convex, inner, t).min())

    ts = np.linspace(-span, span, grid + 1)
    vals = np.array([worst(t) for t in ts])
    i = int(np.argmax(vals))
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, grid)]
    res = optimize.minimize_scalar(lambda t: -worst(t), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-13 * max(span, 1.0)})
    if -res.fun >= vals[i]:
        return float(res.x), float(-res.fun)
    return float(ts[i]), float(vals[i])


def encloses(convex: GeneratingCurve, inner: GeneratingCurve, rtol: float = 1e-8,
             align: bool = False) -> bool:
    """Whether the body of revolution bounded by ``inner`` lies in the one
    bounded by ``convex``.

    Both meridians start at the origin; with ``align`` the inner body may
    first be translated along the axis.
    """
    if align:
        margin = best_axial_shift(convex, inner)[1]
    else:
        margin = float(enclosure_margin(convex, inner).min())
    return margin >= -rtol * convex.length


@dataclass(frozen=True)
class RearrangementResult:
    theta: AngleFunction
    theta_sharp: AngleFunction
    theta_star: AngleFunction
    M: tuple[float, float, float]
    d: tuple[float, float, float]
    encloses: bool
    enclosure_margin: float
    measure_residual: float
    surface: str = ""
    reports: list[InequalityReport] = field(default_factory=list)

    @property
    def M_decrease(self) -> float:
        return self.M[1] - self.M[2]

    @property
    def d_increase(self) -> float:
        return self.d[2] - self.d[1]


def comparison_report(g: GeneratingCurve, m_rtol: float = 1e-6, tol: float = 1e-8,
                      d_tol: float = 1e-9, check: bool = True) -> RearrangementResult:
    """Run both rearrangements and verify the comparison chain.

    Checks ``M(S) = M(S#)``, ``M(S*) <= M(S#)``, ``d(S) <= d(S#) <= d(S*)``,
    that ``S*`` encloses ``S#`` as built (both poles at the origin) and that
    it encloses ``S`` after an axial translation; the two coincide when the
    angle already lies in ``[0, pi]``. With ``check`` set, the first failure
    raises :class:`VerificationFailure` with every stage report attached.
    """
    name = g.meta.get("name", "")
    sharp_angle = first_rearrangement(g.angle)
    star_angle = second_rearrangement(sharp_angle)
    sharp = validate_generating_curve(sharp_angle, meta={"name": f"sharp({name})"})
    star = validate_generating_curve(star_angle, meta={"name": f"star({name})"})
    q0, q1, q2 = (surface_quantities(c) for c in (g, sharp, star))
    M = (q0.total_abs_H, q1.total_abs_H, q2.total_abs_H)
    d = (q0.diameter, q1.diameter, q2.diameter)
    margin = float(enclosure_margin(star, sharp).min())
    shift, margin_aligned = best_axial_shift(star, g)
    residual = float(np.max(np.abs(np.sort(sharp_angle.theta) - star_angle.theta)))
    scale = max(M[0], 1e-300)
    reports = [
        InequalityReport("M(S#) = M(S)", -abs(M[1] - M[0]) / scale, 0.0, m_rtol, name, g.n,
                         extra={"stage": "first", "M": M[0], "M_sharp": M[1]}),
        InequalityReport("M(S*) <= M(S#)", M[1], M[2], tol, name, g.n,
                         extra={"stage": "second"}),
        InequalityReport("d(S) <= d(S#)", d[1], d[0], d_tol, name, g.n,
                         extra={"stage": "first"}),
        InequalityReport("d(S#) <= d(S*)", d[2], d[1], d_tol, name, g.n,
                         extra={"stage": "second"}),
        InequalityReport("S* encloses S#", margin, 0.0, tol * g.length, name, g.n,
                         extra={"stage": "second"}),
        InequalityReport("S* encloses S", margin_aligned, 0.0, tol * g.length, name, g.n,
                         extra={"stage": "second", "axial_shift": shift}),
        InequalityReport("equimeasurable", -residual, 0.0, 1e-12, name, g.n,
                         extra={"stage": "second"}),
    ]
    result = RearrangementResult(
        g.angle, sharp_angle, star_angle, M, d,
        min(margin, margin_aligned) >= -tol * g.length, min(margin, margin_aligned),
        residual, name, reports,
    )
    if check:
        bad = [r for r in reports if not r.passed]
        if bad:
            raise VerificationFailure(
                "; ".join(f"{r.ident} ({r.extra.get('stage')} stage) deficit {r.deficit:.3e}"
                          for r in bad),
                bad,
            )
    return result
