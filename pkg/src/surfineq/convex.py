"""Convex surfaces of revolution: widths, degeneracy, radii and the
inequality suite linking curvature energies to scale-invariant shape ratios.

Directions are parametrised by their angle ``alpha`` with the axis; by
rotational symmetry and ``b(w) = b(-w)`` the width depends on ``alpha`` only
and ``b(alpha) = b(pi - alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .axisym import (
    GeneratingCurve,
    SurfaceQuantities,
    curvature_power,
    surface_quantities,
    width,
    width_table,
)
from .curve import CurveError, constants
from .reports import InequalityReport, VerificationFailure

HALF_PI = 0.5 * math.pi
C_MAIN = 108 * math.pi
# the main inequality combined with Minkowski's inequality
C_ISO = C_MAIN / math.sqrt(4 * math.pi)


def _require_convex(g: GeneratingCurve) -> None:
    if not g.is_convex():
        raise CurveError(f"{g.meta.get('name', 'surface')} is not convex")


def _refine_max(f, lo: float, hi: float) -> tuple[float, float]:
    res = optimize.minimize_scalar(lambda a: -f(a), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-12})
    return float(res.x), float(-res.fun)


def _refine_min(f, lo: float, hi: float) -> tuple[float, float]:
    res = optimize.minimize_scalar(f, bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-12})
    return float(res.x), float(res.fun)


def degeneracy(g: GeneratingCurve, grid: int = 720, orth: int = 360) -> tuple[float, float, float]:
    """Diameter over the smallest width orthogonal to a diameter direction.

    Returns ``(D, alpha0, alpha)``: the value, the axis angle of the
    diameter direction and that of the minimising orthogonal direction.
    """
    _require_convex(g)

    def b(a):
        return width(g, a)

    alphas = np.linspace(0.0, HALF_PI, grid + 1)
    table = width_table(g, alphas)
    i = int(np.argmax(table))
    a0, d = _refine_max(b, alphas[max(i - 1, 0)], alphas[min(i + 1, grid)])
    if table[i] > d:
        a0, d = float(alphas[i]), float(table[i])
    # unit vectors orthogonal to the diameter direction have cos(alpha) =
    # -cos(psi) sin(alpha0); fold into [0, pi/2]
    lo = math.acos(min(1.0, math.sin(a0)))
    if HALF_PI - lo < 1e-12:
        return d / b(HALF_PI), a0, HALF_PI
    psi = np.linspace(0.0, HALF_PI, orth + 1)
    cand = np.arccos(np.abs(np.cos(psi)) * math.sin(a0))
    vals = width_table(g, cand)
    j = int(np.argmin(vals))
    a_lo = cand[min(j + 1, orth)] if j < orth else cand[j - 1]
    a_hi = cand[max(j - 1, 0)] if j > 0 else cand[j + 1]
    a1, bmin = _refine_min(b, max(min(a_lo, a_hi), lo), min(max(a_lo, a_hi), HALF_PI))
    if vals[j] < bmin:
        a1, bmin = float(cand[j]), float(vals[j])
    return d / bmin, a0, a1


def mean_width(g: GeneratingCurve, grid: int = 2048) -> float:
    """``B = (1/2) int_0^pi b(alpha) sin(alpha) d alpha`` by Simpson's rule."""
    alphas = np.linspace(0.0, HALF_PI, grid + 1)
    return float(integrate.simpson(width_table(g, alphas) * np.sin(alphas), x=alphas))


def mean_width_total_H(g: GeneratingCurve, q: SurfaceQuantities | None = None,
                       rtol: float = 1e-3, check: bool = True) -> tuple[float, float]:
    """``(B, 2 pi B)``, verifying ``2 pi B`` against ``int H``."""
    _require_convex(g)
    B = mean_width(g)
    q = surface_quantities(g) if q is None else q
    err = abs(2 * math.pi * B - q.total_H) / abs(q.total_H)
    if check and err > rtol:
        rep = InequalityReport("mean width", -err, 0.0, rtol, g.meta.get("name", ""), g.n,
                               extra={"B": B, "total_H": q.total_H})
        raise VerificationFailure(f"2 pi B differs from int H by {err:.3e} (relative)", [rep])
    return B, 2 * math.pi * B


def radii(g: GeneratingCurve) -> tuple[float, float]:
    """Inradius and circumradius, with centres searched along the axis."""
    _require_convex(g)
    x, z = g.x, g.z
    lo, hi = float(z.min()), float(z.max())

    def far(c):
        return float(np.max(x * x + (z - c) ** 2))

    def near(c):
        return float(np.min(x * x + (z - c) ** 2))

    _, r_out2 = _refine_min(far, lo, hi)
    _, r_in2 = _refine_max(near, lo, hi)
    return math.sqrt(r_in2), math.sqrt(r_out2)


@dataclass(frozen=True)
class ConvexMetrics:
    degeneracy: float
    alpha0: float
    alpha: float
    mean_width: float
    total_H_via_width: float
    r_in: float
    r_out: float
    alphas: np.ndarray
    widths: np.ndarray

    @property
    def R_ratio(self) -> float:
        return self.r_out / self.r_in


def convex_metrics(g: GeneratingCurve, q: SurfaceQuantities | None = None,
                   grid: int = 720) -> ConvexMetrics:
    D, a0, a1 = degeneracy(g, grid)
    B, twopiB = mean_width_total_H(g, q, check=False)
    r_in, r_out = radii(g)
    alphas = np.linspace(0.0, math.pi, grid + 1)
    return ConvexMetrics(D, a0, a1, B, twopiB, r_in, r_out, alphas, width_table(g, alphas))


# -- slicing identity ---------------------------------------------------------


@dataclass(frozen=True)
class SliceSample:
    s: float
    t: float
    twoH: float
    k_slice: float
    sin_theta_omega: float
    kappa_omega: float
    residual: float


def _position_mean_curvature(g: GeneratingCurve) -> np.ndarray:
    """``2H`` from positions alone: meridian curvature of ``(x(s), z(s))`` by
    centred differences plus the parallel term ``z' / (|gamma'| x)``."""
    h = g.h
    x1 = np.gradient(g.x, h, edge_order=2)
    z1 = np.gradient(g.z, h, edge_order=2)
    x2 = np.gradient(x1, h, edge_order=2)
    z2 = np.gradient(z1, h, edge_order=2)
    speed = np.hypot(x1, z1)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (x1 * z2 - z1 * x2) / speed ** 3 + z1 / (speed * g.x)


def slicing_residuals(g: GeneratingCurve, guard: int = 3) -> list[SliceSample]:
    """Check ``2H = k sin(theta_w) + kappa_w`` for slices normal to the axis.

    ``2H`` comes from positions; the right side from the angle function:
    ``k = 1/x`` (the parallel circle), ``sin(theta_w) = sin(theta)`` (signed,
    equal to ``|sin theta|`` on convex profiles) and ``kappa_w = theta_s``.
    Samples within ``guard`` grid steps of a pole or a recorded kink are
    skipped, since the difference quotients straddle a curvature jump there.
    """
    n, h = g.n, g.h
    keep = np.zeros(n + 1, dtype=bool)
    keep[guard:n - guard + 1] = True
    s = g.angle.s
    for k in g.meta.get("kinks", []):
        keep &= np.abs(s - k) > (guard + 0.5) * h
    delta = g.meta.get("delta")
    if delta:
        for k in g.meta.get("kinks", []):
            keep &= np.abs(s - k) > 0.5 * delta + (guard + 0.5) * h
    twoH = _position_mean_curvature(g)
    ths = g.angle.derivative()
    sin = np.sin(g.theta)
    scale = 1.0 / g.length
    out = []
    for i in np.flatnonzero(keep):
        k_slice = 1.0 / g.x[i]
        rhs = k_slice * sin[i] + ths[i]
        res = abs(twoH[i] - rhs) / max(abs(twoH[i]), scale)
        out.append(SliceSample(float(s[i]), float(g.z[i]), float(twoH[i]), k_slice,
                               float(sin[i]), float(ths[i]), float(res)))
    return out


def max_slicing_residual(g: GeneratingCurve, guard: int = 3) -> float:
    samples = slicing_residuals(g, guard)
    return max((c.residual for c in samples), default=0.0)


# -- inequality suite ---------------------------------------------------------


def convex_inequality_suite(g: GeneratingCurve, p_list=(1.0, 1.5, 2.0, 3.0),
                            check: bool = True, rtol: float | None = None) -> list[InequalityReport]:
    """Evaluate the convex inequalities on ``g``.

    Asserted: the main estimate with ``C = 108 pi``, its isoperimetric form
    with ``C' = 54 sqrt(pi)``, the degeneracy bound for each ``p``, the
    scaling law ``d A / V <= 36 D``, Minkowski's inequality, the mean width
    bound ``int H <= 2 pi d``, ``3 V int H <= A^2`` and the mean width
    identity. Ratios whose constants are not explicit are recorded only.
    """
    _require_convex(g)
    name = g.meta.get("name", "")
    delta = g.meta.get("delta", 0.0)
    if rtol is None:
        rtol = 2e-4 if delta else 1e-4
    q = surface_quantities(g)
    m = convex_metrics(g, q)
    A, V, d, W, MH = q.area, q.volume, q.diameter, q.willmore, q.total_H
    D = m.degeneracy
    iso = q.iso_ratio

    def rep(ident, lhs, rhs, asserted=True, **extra):
        return InequalityReport(ident, lhs, rhs, rtol * abs(rhs), name, g.n, delta,
                                asserted, extra)

    out = [
        rep("C int H^2 >= (A/V) int H", C_MAIN * W, (A / V) * MH, E=q.E),
        rep("C' int H^2 >= I", C_ISO * W, iso, E_prime=q.E_prime),
        rep("E <= 4", 4.0, q.E, asserted=False),
    ]
    for p in p_list:
        cp = constants(p).c_p
        lhs = d ** (p - 2) * (MH if p == 1 else curvature_power(g, p))
        out.append(rep(f"degeneracy bound p={p:g}", lhs, cp * D ** (p - 1), p=p, c_p=cp))
    out += [
        rep("d A/V <= 36 D", 36 * D, d * A / V, D=D),
        rep("Minkowski", MH, math.sqrt(4 * math.pi * A)),
        rep("int H <= 2 pi d", 2 * math.pi * d, MH),
        rep("3 V int H <= A^2", A * A, 3 * V * MH),
        InequalityReport("2 pi B = int H", -abs(m.total_H_via_width - MH) / MH, 0.0, 1e-3,
                         name, g.n, delta, True, {"B": m.mean_width}),
    ]
    for ident, value in [
        ("D / (d A/V)", D / (d * A / V)),
        ("D / (int H A/V)", D / (MH * A / V)),
        ("I / D", iso / D),
        ("D / I^2", D / iso ** 2),
        ("R / D", m.R_ratio / D),
    ]:
        out.append(InequalityReport(ident, value, 0.0, 0.0, name, g.n, delta, False,
                                    {"r_in": m.r_in, "r_out": m.r_out}))
    if check:
        bad = [r for r in out if r.asserted and not r.passed]
        if bad:
            raise VerificationFailure(
                "; ".join(f"{r.ident} on {name}: deficit {r.deficit:.3e}" for r in bad), out)
    return out
