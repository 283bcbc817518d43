"""Plane curves stored through their tangent angle.

A curve of length ``L`` is the sampled angle ``theta`` on the uniform grid
``s_i = i L / n``; positions are recovered by cumulative trapezoid quadrature
of ``(cos theta, sin theta)`` and the curvature is ``theta_s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize, special

from .reports import InequalityReport


class CurveError(ValueError):
    """Invalid curve input or a violated precondition."""


class AccuracyError(RuntimeError):
    """A quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved {achieved:.3e})")
        self.achieved = achieved


@dataclass(frozen=True, eq=False)
class AngleFunction:
    """Tangent angle sampled on ``n + 1`` uniform arclength nodes.

    ``dtheta`` optionally carries exact derivative samples; otherwise the
    derivative is a second-order centered difference of ``theta``.
    """

    length: float
    theta: np.ndarray
    dtheta: np.ndarray | None = None
    lipschitz: float = field(default=float("nan"))

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.ndim != 1 or theta.size < 3:
            raise CurveError("theta must be a 1-d array with at least 3 samples")
        if not (self.length > 0 and math.isfinite(self.length)):
            raise CurveError(f"length must be positive, got {self.length!r}")
        if not np.all(np.isfinite(theta)):
            raise CurveError("theta contains non-finite samples")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        if self.dtheta is not None:
            d = np.asarray(self.dtheta, dtype=float)
            if d.shape != theta.shape:
                raise CurveError("dtheta must match theta in shape")
            d.setflags(write=False)
            object.__setattr__(self, "dtheta", d)
        measured = float(np.max(np.abs(np.diff(theta)))) / self.h
        if math.isnan(self.lipschitz):
            object.__setattr__(self, "lipschitz", measured)
        elif measured > self.lipschitz * (1 + 1e-9) + 1e-12:
            raise CurveError(
                f"Lipschitz certificate {self.lipschitz} below measured {measured}"
            )

    @property
    def n(self) -> int:
        return self.theta.size - 1

    @property
    def h(self) -> float:
        return self.length / (self.theta.size - 1)

    @property
    def s(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.theta.size)

    def derivative(self) -> np.ndarray:
        if self.dtheta is not None:
            return self.dtheta
        return np.gradient(self.theta, self.h, edge_order=2)

    def scaled(self, lam: float) -> "AngleFunction":
        d = None if self.dtheta is None else self.dtheta / lam
        return AngleFunction(self.length * lam, self.theta, d, self.lipschitz / lam)

    @classmethod
    def from_function(cls, func, length: float, n: int, dfunc=None) -> "AngleFunction":
        s = np.linspace(0.0, length, n + 1)
        theta = np.asarray(func(s), dtype=float)
        d = None if dfunc is None else np.asarray(dfunc(s), dtype=float)
        return cls(length, theta, d)

    @classmethod
    def from_samples(cls, s, theta, rtol: float = 1e-9) -> "AngleFunction":
        s = np.asarray(s, dtype=float)
        if s.size < 3 or s[0] != 0.0:
            raise CurveError("samples must start at s = 0")
        step = np.diff(s)
        h = s[-1] / (s.size - 1)
        if np.any(np.abs(step - h) > rtol * max(h, 1.0)):
            raise CurveError("non-uniform arclength grid")
        return cls(float(s[-1]), theta)


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    x: np.ndarray
    z: np.ndarray
    kappa: np.ndarray
    closed: bool
    angle: AngleFunction

    @property
    def length(self) -> float:
        return self.angle.length

    @property
    def h(self) -> float:
        return self.angle.h

    def closure_error(self) -> float:
        return float(math.hypot(self.x[-1] - self.x[0], self.z[-1] - self.z[0]))


def cumtrapz0(y: np.ndarray, h: float) -> np.ndarray:
    return integrate.cumulative_trapezoid(y, dx=h, initial=0.0)


def trapz(y: np.ndarray, h: float) -> float:
    return float(integrate.trapezoid(y, dx=h))


def reconstruct(angle: AngleFunction, closure_tol: float | None = None) -> PlaneCurve:
    h = angle.h
    x = cumtrapz0(np.cos(angle.theta), h)
    z = cumtrapz0(np.sin(angle.theta), h)
    tol = 1e-6 * angle.length if closure_tol is None else closure_tol
    closed = math.hypot(x[-1], z[-1]) <= tol
    return PlaneCurve(x, z, angle.derivative(), closed, angle)


def bending_energy(curve: PlaneCurve, p: float) -> float:
    """Return the integral of ``|kappa|**p`` over the curve."""
    if p < 1:
        raise CurveError(f"p must be >= 1, got {p}")
    return trapz(np.abs(curve.kappa) ** p, curve.h)


def enclosed_area(curve: PlaneCurve) -> float:
    th = curve.angle.theta
    return 0.5 * trapz(curve.x * np.sin(th) - curve.z * np.cos(th), curve.h)


def is_convex_closed(curve: PlaneCurve, turn_tol: float = 1e-6) -> bool:
    th = curve.angle.theta
    slack = 1e-9 * max(curve.angle.lipschitz, 1.0)
    turning = th[-1] - th[0]
    return (
        curve.closed
        and bool(np.all(np.diff(th) >= -slack))
        and abs(turning - 2 * math.pi) <= turn_tol
    )


def gage_report(curve: PlaneCurve, rtol: float = 1e-5) -> InequalityReport:
    if not is_convex_closed(curve):
        raise CurveError("Gage's inequality needs a closed convex curve")
    lhs = bending_energy(curve, 2)
    rhs = math.pi * curve.length / enclosed_area(curve)
    return InequalityReport("gage", lhs, rhs, tolerance=rtol * rhs, n=curve.angle.n)


def directional_width(x, z, phi: float) -> float:
    proj = x * math.cos(phi) + z * math.sin(phi)
    return float(proj.max() - proj.min())


def minimal_width(x, z, grid: int = 720) -> tuple[float, float]:
    """Smallest width over all directions, with the minimizing direction.

    A direction grid over ``[0, pi)`` is refined by a bounded scalar search
    inside the bracketing grid cell.
    """
    phis = np.linspace(0.0, math.pi, grid, endpoint=False)
    xz = np.stack([x, z])
    proj = np.stack([np.cos(phis), np.sin(phis)], axis=1) @ xz
    widths = proj.max(axis=1) - proj.min(axis=1)
    k = int(np.argmin(widths))
    step = math.pi / grid
    res = optimize.minimize_scalar(
        lambda ph: directional_width(x, z, ph),
        bounds=(phis[k] - step, phis[k] + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if res.fun < widths[k]:
        return float(res.fun), float(res.x % math.pi)
    return float(widths[k]), float(phis[k])


def strip_energy_bound(
    curve: PlaneCurve, p: float, rtol: float = 1e-4
) -> InequalityReport:
    """Bending energy against the strip bound ``c~_p r^(1-p)``."""
    if not curve.closed:
        raise CurveError("strip bound needs a closed curve")
    r, phi = minimal_width(curve.x, curve.z)
    if r < 4 * curve.h:
        raise CurveError(f"width {r:.3e} below grid resolution {curve.h:.3e}")
    lhs = bending_energy(curve, p)
    rhs = constants(p).c_tilde_p * r ** (1 - p)
    return InequalityReport(
        f"strip_p{p:g}", lhs, rhs, tolerance=rtol * rhs, n=curve.angle.n,
        extra={"width": r, "direction": phi},
    )


# -- sharp constants ---------------------------------------------------------


@dataclass(frozen=True)
class ConstantsTable:
    p: float
    c_tilde_p: float
    c_p: float
    A_limit: float
    method: str
    c_tilde_p_quad: float
    c_p_quad: float
    c_p_product: float
    discrepancy: float


def _quad(f, a, b, what: str, tol: float = 1e-12) -> float:
    val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=200)
    if not err <= 100 * tol * max(1.0, abs(val)):
        raise AccuracyError(f"quadrature for {what} did not converge", err)
    return val


def _beta(a: float, b: float) -> float:
    return math.exp(special.gammaln(a) + special.gammaln(b) - special.gammaln(a + b))


def limit_value(p: float) -> float:
    """``f(inf)`` for ``f(t) = int_0^t (1+tau^2)^((1-3p)/(2p))``, via log-gamma."""
    return 0.5 * _beta(0.5, (2 * p - 1) / (2 * p))


def limit_value_quad(p: float) -> float:
    # t = tan(phi) maps the improper integral onto [0, pi/2]
    m = (p - 1) / p
    return _quad(lambda ph: math.cos(ph) ** m, 0.0, math.pi / 2, "f(inf)")


def barrier(t):
    """Lower bound for the sine of the normal angle at relative height ``t``."""
    t = np.asarray(t, dtype=float)
    m = 0.5 - np.abs(t - 0.5)
    with np.errstate(divide="ignore"):
        return np.where(m > 0, m / np.sqrt(1.0 + m * m), 0.0)


def constants(p: float) -> ConstantsTable:
    if p < 1:
        raise CurveError(f"p must be >= 1, got {p}")
    a_closed = limit_value(p)
    a_quad = limit_value_quad(p)
    ct_closed = 2.0 * (2.0 * a_closed) ** p
    ct_quad = 2.0 * (2.0 * a_quad) ** p
    g_int = _quad(lambda t: float(barrier(t)) ** (p - 1), 0.0, 1.0, "barrier integral")
    cp_quad = 2.0 ** (-p) * ct_quad * g_int
    half = _quad(
        lambda t: (1.0 + t ** -2) ** ((1 - p) / 2) if t > 0 else float(p == 1),
        0.0, 0.5, "half-interval barrier integral",
    )
    cp_product = 2.0 * a_quad ** p * 2.0 * half
    # int_0^{1/2} t^(p-1) (1+t^2)^(-(p-1)/2) dt in hypergeometric form
    half_closed = 0.5 ** p / p * special.hyp2f1((p - 1) / 2, p / 2, p / 2 + 1, -0.25)
    cp_closed = 2.0 * a_closed ** p * 2.0 * half_closed
    disc = max(abs(ct_closed - ct_quad), abs(cp_closed - cp_quad), abs(cp_product - cp_quad))
    return ConstantsTable(
        p=p, c_tilde_p=ct_closed, c_p=cp_closed, A_limit=a_closed, method="log-gamma",
        c_tilde_p_quad=ct_quad, c_p_quad=cp_quad, c_p_product=cp_product,
        discrepancy=disc,
    )


# -- equality case of the strip bound ---------------------------------------


def _f_of_angle(phi, p: float):
    """``f(tan phi)`` in closed form through the regularized incomplete beta."""
    b = (2 * p - 1) / (2 * p)
    return limit_value(p) * special.betainc(0.5, b, np.sin(phi) ** 2)


def f_inverse(y: float, p: float, tol: float = 1e-12) -> float:
    """Solve ``f(t) = y`` for ``0 <= y < f(inf)`` by bisection on the angle."""
    a = limit_value(p)
    if not 0 <= y < a:
        raise CurveError(f"f^-1 defined on [0, {a}), got {y}")
    lo, hi = 0.0, math.pi / 2
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        r = _f_of_angle(mid, p) - y
        if abs(r) <= tol:
            lo = hi = mid
            break
        if r < 0:
            lo = mid
        else:
            hi = mid
    return math.tan(0.5 * (lo + hi))


def extremal_graph(p: float, x) -> tuple[np.ndarray, np.ndarray]:
    """Values and slopes of the extremal graph ``u`` on ``(-1, 1)``."""
    if p <= 1:
        raise CurveError("the extremal graph exists only for p > 1")
    a = limit_value(p)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    slope = np.array([math.copysign(f_inverse(a * abs(v), p), v) for v in x])
    k = (1 - p) / (2 * p)
    u = p / ((p - 1) * a) * (1.0 - (1.0 + slope ** 2) ** k)
    return u, slope


def extremal_curve(p: float, n: int) -> PlaneCurve:
    """Closed convex curve attaining equality in the strip bound at width 2.

    The curvature obeys ``kappa = A cos(theta)**(1/p)``, so arclength as a
    function of the angle is an incomplete beta integral that is inverted in
    closed form. ``n`` is rounded up to a multiple of 4 so that both junction
    points (vertical tangents) sit on grid nodes.
    """
    if p <= 1:
        raise CurveError("p must exceed 1 (the extremal height is unbounded as p -> 1)")
    n = 4 * math.ceil(n / 4)
    a = limit_value(p)
    b = (p - 1) / (2 * p)
    quarter = 0.5 * _beta(0.5, b) / a
    m = n // 4
    frac = np.arange(m + 1) / m
    q = np.arcsin(np.sqrt(np.clip(special.betaincinv(0.5, b, frac), 0.0, 1.0)))
    q[-1] = math.pi / 2
    theta = np.concatenate([q, math.pi - q[-2::-1], math.pi + q[1:], 2 * math.pi - q[-2::-1]])
    angle = AngleFunction(4 * quarter, theta)
    return reconstruct(angle)
