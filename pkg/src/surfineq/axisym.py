"""Closed axisymmetric surfaces generated by a meridian curve.

The meridian starts at the south pole ``(0, 0)`` with horizontal tangent,
stays in ``x > 0`` and ends on the axis with tangent ``(-1, 0)``. The axis of
revolution is the ``z`` axis. Mean curvature ``H`` is the average of the
principal curvatures, positive on the unit sphere:

    2H = theta_s + sin(theta) / x,

with the pole limit ``2H = 2 theta_s`` where ``x = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import kernels
from .curve import AngleFunction, CurveError, cumtrapz0, trapz
from .reports import InequalityReport


class ProfileError(CurveError):
    """The angle function does not generate an admissible surface."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


@dataclass(frozen=True, eq=False)
class GeneratingCurve:
    angle: AngleFunction
    x: np.ndarray
    z: np.ndarray
    delta_pole: float
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def length(self) -> float:
        return self.angle.length

    @property
    def theta(self) -> np.ndarray:
        return self.angle.theta

    @property
    def n(self) -> int:
        return self.angle.n

    @property
    def h(self) -> float:
        return self.angle.h

    def is_convex(self) -> bool:
        th = self.theta
        slack = 1e-9 * max(self.angle.lipschitz, 1.0)
        return (
            bool(np.all(np.diff(th) >= -slack))
            and abs(th[0]) <= 1e-8
            and abs(th[-1] - math.pi) <= 1e-8
        )

    def scaled(self, lam: float) -> "GeneratingCurve":
        return validate_generating_curve(
            self.angle.scaled(lam), self.delta_pole * lam, meta=dict(self.meta)
        )


def validate_generating_curve(
    angle: AngleFunction,
    delta_pole: float | None = None,
    closure_tol: float | None = None,
    meta: dict | None = None,
) -> GeneratingCurve:
    th = angle.theta
    L = angle.length
    tol = 1e-6 * L if closure_tol is None else closure_tol
    if abs(th[0]) > 1e-8:
        raise ProfileError("bad pole tangents", f"theta(0) = {th[0]!r}")
    k = round((th[-1] - math.pi) / (2 * math.pi))
    if abs(th[-1] - math.pi - 2 * math.pi * k) > 1e-8:
        raise ProfileError("bad pole tangents", f"theta(L) = {th[-1]!r} not in pi + 2 pi Z")
    x = cumtrapz0(np.cos(th), angle.h)
    z = cumtrapz0(np.sin(th), angle.h)
    if abs(x[-1]) > tol:
        raise ProfileError("open profile", f"x(L) = {x[-1]!r}")
    if np.any(x[1:-1] <= 0):
        i = 1 + int(np.argmin(x[1:-1]))
        raise ProfileError("pinched profile", f"x = {x[i]!r} at s = {i * angle.h!r}")
    if z[-1] < -tol:
        raise ProfileError("orientation violation", f"z(L) = {z[-1]!r}")
    x[-1] = 0.0
    x.setflags(write=False)
    z.setflags(write=False)
    dp = 0.5 * angle.h if delta_pole is None else delta_pole
    return GeneratingCurve(angle, x, z, dp, dict(meta or {}))


# -- surface quantities ------------------------------------------------------


@dataclass(frozen=True)
class SurfaceQuantities:
    area: float
    volume: float
    total_H: float
    total_abs_H: float
    willmore: float
    diameter: float
    iso_ratio: float
    E: float
    E_prime: float
    total_H_g: float
    total_abs_H_direct: float

    def as_dict(self) -> dict[str, float]:
        return dict(self.__dict__)


def _pole_mask(g: GeneratingCurve) -> np.ndarray:
    s = g.angle.s
    mask = (s <= g.delta_pole) | (s >= g.length - g.delta_pole)
    mask[0] = mask[-1] = True
    return mask


def mean_curvature(g: GeneratingCurve) -> np.ndarray:
    """Samples of ``H`` along the meridian."""
    th = g.theta
    ths = g.angle.derivative()
    pole = _pole_mask(g)
    with np.errstate(divide="ignore", invalid="ignore"):
        par = np.where(pole, ths, np.sin(th) / np.where(pole, 1.0, g.x))
    return 0.5 * (ths + par)


def curvature_power(g: GeneratingCurve, p: float) -> float:
    """Integral of ``|H|**p`` over the surface."""
    return 2 * math.pi * trapz(np.abs(mean_curvature(g)) ** p * g.x, g.h)


def surface_quantities(g: GeneratingCurve) -> SurfaceQuantities:
    th, x, h = g.theta, g.x, g.h
    ths = g.angle.derivative()
    sin = np.sin(th)
    H = mean_curvature(g)
    area = 2 * math.pi * trapz(x, h)
    volume = math.pi * trapz(x * x * sin, h)
    integrand = sin + ths * x
    total_H = math.pi * trapz(integrand, h)
    total_abs_direct = math.pi * trapz(np.abs(integrand), h)
    total_H_g = math.pi * trapz(sin - th * np.cos(th), h)
    # int|H| >= |int H|. The integrated-by-parts form of int H is accurate to
    # high order and invariant under permuting samples, while the direct
    # |.| form is only second order; where the direct value falls below it
    # the surface is mean convex up to discretization error.
    total_abs = max(total_abs_direct, abs(total_H_g))
    willmore = 2 * math.pi * trapz(H * H * x, h)
    d = diameter(g)[0]
    iso = area ** 1.5 / volume
    return SurfaceQuantities(
        area=area,
        volume=volume,
        total_H=total_H,
        total_abs_H=total_abs,
        willmore=willmore,
        diameter=d,
        iso_ratio=iso,
        E=(area / volume) * total_H / willmore,
        E_prime=iso / willmore,
        total_H_g=total_H_g,
        total_abs_H_direct=total_abs_direct,
    )


def diameter(g: GeneratingCurve) -> tuple[float, tuple[float, float]]:
    """Extrinsic diameter and the arclengths of a maximizing pair.

    Two surface points at meridian positions ``s1, s2`` are farthest apart
    on opposite sides of the axis, so the diameter is the largest distance
    between the meridian and its mirror image ``(x, z) -> (-x, z)``.
    """
    d, i, j = kernels.reflected_diameter(
        np.ascontiguousarray(g.x), np.ascontiguousarray(g.z)
    )
    return d, (i * g.h, j * g.h)


def width(g: GeneratingCurve, alpha: float) -> float:
    """Width along a direction making angle ``alpha`` with the axis."""
    sa, ca = math.sin(alpha), math.cos(alpha)
    return float(np.max(g.x * sa + g.z * ca) - np.min(-g.x * sa + g.z * ca))


def width_table(g: GeneratingCurve, alphas) -> np.ndarray:
    alphas = np.asarray(alphas, dtype=float)
    sa = np.sin(alphas)[:, None]
    ca = np.cos(alphas)[:, None]
    top = (g.x[None, :] * sa + g.z[None, :] * ca).max(axis=1)
    bot = (-g.x[None, :] * sa + g.z[None, :] * ca).min(axis=1)
    return top - bot


# -- axial statistics and Topping deficit -------------------------------------


@dataclass(frozen=True)
class AxialStats:
    a: float
    a_star: float
    a_bar: float
    b_star: float
    U: float
    V_remainder: float


def axial_stats(g: GeneratingCurve) -> AxialStats:
    th, h = g.theta, g.h
    sin, cos = np.sin(th), np.cos(th)
    dt = 1.0 / g.n
    u_root = trapz(np.sqrt(np.clip(1.0 - sin, 0.0, None)), dt)
    v_rem = trapz(np.abs(cos), dt) ** 2 + trapz(np.clip(-sin, 0.0, None), dt)
    return AxialStats(
        a=float(g.z[-1]),
        a_star=trapz(np.abs(sin), h),
        a_bar=float(g.z.max() - g.z.min()),
        b_star=0.5 * trapz(np.abs(cos), h),
        U=u_root ** 2,
        V_remainder=v_rem,
    )


def topping_deficit(g: GeneratingCurve, q: SurfaceQuantities | None = None) -> InequalityReport:
    q = surface_quantities(g) if q is None else q
    st = axial_stats(g)
    lhs = q.total_abs_H / q.diameter
    deficit = lhs - math.pi
    return InequalityReport(
        "topping", lhs, math.pi, tolerance=0.0, surface=g.meta.get("name", ""),
        n=g.n, delta=g.meta.get("delta", 0.0),
        extra={
            "U": st.U,
            "V_remainder": st.V_remainder,
            "deficit_over_U": deficit / st.U,
            "deficit_over_V": deficit / st.V_remainder,
        },
    )


def simon_report(g: GeneratingCurve, q: SurfaceQuantities | None = None) -> InequalityReport:
    """``sqrt(A W)`` against ``pi d``; the classical bound ``pi d / 2`` is kept too."""
    q = surface_quantities(g) if q is None else q
    lhs = math.sqrt(q.area * q.willmore)
    return InequalityReport(
        "simon", lhs, math.pi * q.diameter, surface=g.meta.get("name", ""), n=g.n,
        extra={"half_bound": 0.5 * math.pi * q.diameter},
    )


# -- singular convex hulls of three coaxial circles ------------------------


@dataclass(frozen=True)
class SingularRevolvedBody:
    """Boundary of the convex hull of circles of radius ``a`` at heights
    ``+-h/2`` and a circle of radius ``A_mid`` at height 0."""

    h: float
    a: float
    A_mid: float

    def __post_init__(self):
        if not (0 <= self.a <= self.A_mid and self.h >= 0):
            raise CurveError(f"need 0 <= a <= A_mid and h >= 0, got {self}")

    @property
    def cone_angle(self) -> float:
        return math.atan2(2 * (self.A_mid - self.a), self.h)

    def vertices(self) -> np.ndarray:
        a, A, h = self.a, self.A_mid, self.h
        return np.array([(0.0, 0.0), (a, 0.0), (A, h / 2), (a, h), (0.0, h)])


def exact_singular_M(body: SingularRevolvedBody) -> tuple[float, float]:
    """Exact ``int |H|`` and diameter of the singular body."""
    th = body.cone_angle
    M = math.pi * body.h + math.pi ** 2 * body.a + 2 * math.pi * th * (body.A_mid - body.a)
    v = body.vertices()
    d, _, _ = kernels.reflected_diameter(
        np.ascontiguousarray(v[:, 0]), np.ascontiguousarray(v[:, 1])
    )
    return M, d


def segment_deviation(g: GeneratingCurve, q: SurfaceQuantities | None = None) -> tuple[float, float]:
    """Distance of the meridian from a segment along the axis.

    The meridian is scaled to unit diameter and parametrised on ``[0, 1]``
    at constant speed ``L``, so ``gamma' = L (cos theta, sin theta)``.
    Returns ``(int |gamma' - L e_z|^2, int |gamma' - e_z|^2)``; the first
    equals ``2 L^2 int (1 - sin theta)``.
    """
    q = surface_quantities(g) if q is None else q
    L = g.length / q.diameter
    th = g.theta
    dt = 1.0 / g.n
    to_axis = 2 * L * L * trapz(1.0 - np.sin(th), dt)
    to_unit = trapz((L * np.cos(th)) ** 2 + (L * np.sin(th) - 1.0) ** 2, dt)
    return to_axis, to_unit
