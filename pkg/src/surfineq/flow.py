"""First variation of the isoperimetric ratio under mean curvature flow.

The normal speed is the average mean curvature ``H`` (``H = 1`` on the unit
sphere), pointing inward. Then ``dA/dt = -2 int H^2`` and
``dV/dt = -int H``, so

    dI/dt = -(A^(1/2) / V) (3 int H^2 - (A/V) int H)

for ``I = A^(3/2) / V`` with no extra factor; the sum convention would double
both derivatives. Finite-difference probes move every meridian sample by
``-tau H nu`` with ``nu = (sin theta, -cos theta)`` the outward normal and
evaluate area and volume directly on the displaced samples, using the exact
tangent ``P_s = T (1 - tau H theta_s) - tau H_s nu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import interpolate

from .axisym import GeneratingCurve, mean_curvature, surface_quantities, validate_generating_curve
from .curve import AngleFunction, CurveError, cumtrapz0, trapz
from .reports import InequalityReport, VerificationFailure


class StepSizeError(CurveError):
    """The step pinches the profile or folds the displaced meridian."""


def _displaced(g: GeneratingCurve, tau: float, speed_factor: float = 1.0):
    th = g.theta
    H = speed_factor * mean_curvature(g)
    Hs = np.gradient(H, g.h, edge_order=2)
    ths = g.angle.derivative()
    c, s = np.cos(th), np.sin(th)
    x = g.x - tau * H * s
    z = g.z + tau * H * c
    stretch = 1.0 - tau * H * ths
    xs = c * stretch - tau * Hs * s
    zs = s * stretch + tau * Hs * c
    if np.any(stretch <= 0):
        raise StepSizeError(f"tau = {tau:g} folds the meridian (1 - tau H theta_s <= 0)")
    if np.any(x[1:-1] <= 0):
        raise StepSizeError(f"tau = {tau:g} pinches the profile")
    x[0] = x[-1] = 0.0
    return x, z, xs, zs


def _area_volume(g: GeneratingCurve, tau: float, speed_factor: float = 1.0) -> tuple[float, float]:
    x, z, xs, zs = _displaced(g, tau, speed_factor)
    area = 2 * math.pi * trapz(x * np.hypot(xs, zs), g.h)
    volume = math.pi * trapz(x * x * zs, g.h)
    return area, volume


def _iso(area: float, volume: float) -> float:
    return area ** 1.5 / volume


def _close(th: np.ndarray, length: float, iters: int = 4) -> tuple[np.ndarray, float]:
    """Add ``c sin^2(pi s / L)`` to the angle so that the meridian returns to
    the axis. The defect is of the size of the quadrature error except where
    the curvature jumps and the displaced meridian has a step."""
    h = length / (th.size - 1)
    bump = np.sin(np.linspace(0.0, math.pi, th.size)) ** 2
    c = 0.0
    for _ in range(iters):
        cur = th + c * bump
        defect = trapz(np.cos(cur), h)
        slope = -trapz(np.sin(cur) * bump, h)
        if slope == 0.0:
            break
        c -= defect / slope
    return th + c * bump, c


def mcf_step(g: GeneratingCurve, tau: float, speed_factor: float = 1.0) -> GeneratingCurve:
    """One explicit step of length ``tau``, re-parametrised by arclength.

    ``speed_factor = 2`` moves with the sum of principal curvatures instead.
    """
    x, z, xs, zs = _displaced(g, tau, speed_factor)
    speed = np.hypot(xs, zs)
    arc = cumtrapz0(speed, g.h)
    ang = np.unwrap(np.arctan2(zs, xs))
    ang -= ang[0]
    end = math.pi + 2 * math.pi * round((ang[-1] - math.pi) / (2 * math.pi))
    spline = interpolate.CubicSpline(arc, ang)
    s_new = np.linspace(0.0, arc[-1], g.n + 1)
    th = spline(s_new)
    th[0], th[-1] = 0.0, end
    th, shift = _close(th, float(arc[-1]))
    meta = dict(g.meta)
    meta["closure_projection"] = shift
    meta["name"] = f"mcf({g.meta.get('name', '')},tau={tau:g})"
    meta.pop("exact", None)
    try:
        return validate_generating_curve(AngleFunction(float(arc[-1]), th), meta=meta)
    except CurveError as exc:
        raise StepSizeError(f"tau = {tau:g}: {exc}") from exc


def analytic_rate(g: GeneratingCurve) -> float:
    q = surface_quantities(g)
    A, V = q.area, q.volume
    return -(math.sqrt(A) / V) * (3 * q.willmore - (A / V) * q.total_H)


def iso_difference_rate(g: GeneratingCurve) -> float:
    """Analytic rate of ``A^(3/2) - 6 sqrt(pi) V``."""
    q = surface_quantities(g)
    return -3 * math.sqrt(q.area) * q.willmore + 6 * math.sqrt(math.pi) * q.total_H


def fd_rate(g: GeneratingCurve, tau: float, speed_factor: float = 1.0) -> float:
    """Central difference of ``I`` over steps ``+tau`` and ``-tau``."""
    ip = _iso(*_area_volume(g, tau, speed_factor))
    im = _iso(*_area_volume(g, -tau, speed_factor))
    return (ip - im) / (2 * tau)


def area_rate_fd(g: GeneratingCurve, tau: float, speed_factor: float = 1.0) -> float:
    ap, _ = _area_volume(g, tau, speed_factor)
    am, _ = _area_volume(g, -tau, speed_factor)
    return (ap - am) / (2 * tau)


def convergence_order(g: GeneratingCurve, taus=(1e-2, 5e-3, 2.5e-3)) -> float:
    """Observed order of the central difference from three halving steps.

    Successive differences cancel the step-independent discretisation
    error, so ``log2`` of their ratio estimates the exponent of ``tau``.
    """
    f = [fd_rate(g, t) for t in taus]
    d1, d2 = abs(f[0] - f[1]), abs(f[1] - f[2])
    if d2 == 0.0:
        return float("inf")
    return math.log(d1 / d2, taus[0] / taus[1])


@dataclass(frozen=True)
class FlowProbe:
    tau: float
    analytic_rate: float
    fd_rate: float
    iso_difference_rate: float
    fd_iso_difference_rate: float
    richardson_c: float
    band: float
    surface: str = ""
    n: int = 0

    @property
    def agreement(self) -> float:
        return abs(self.analytic_rate - self.fd_rate)

    @property
    def relative_error(self) -> float:
        return self.agreement / abs(self.analytic_rate) if self.analytic_rate else float("inf")

    @property
    def increasing(self) -> bool:
        return self.fd_rate > 0

    @property
    def analytic_increasing(self) -> bool:
        return self.analytic_rate > 0

    def report(self) -> InequalityReport:
        return InequalityReport(
            "dI/dt first variation", -self.agreement, 0.0, self.band, self.surface, self.n,
            extra={"tau": self.tau, "analytic": self.analytic_rate, "fd": self.fd_rate,
                   "iso_difference_rate": self.iso_difference_rate},
        )


def rate_check(g: GeneratingCurve, tau: float, rtol: float = 0.05, atol: float = 1e-3,
               check: bool = True) -> FlowProbe:
    """Compare the analytic rate of ``I`` with its central difference.

    The agreement band is ``c tau + rtol |analytic| + atol (2/d)^2``, where
    ``c tau`` is the Richardson estimate of the ``tau^2`` error obtained
    from the steps ``tau`` and ``2 tau``, and the absolute part is scaled
    like the rate itself (``1/length^2``).
    """
    q = surface_quantities(g)
    ar = analytic_rate(g)
    f1 = fd_rate(g, tau)
    f2 = fd_rate(g, 2 * tau)
    c = abs(f2 - f1) / (3 * tau)
    band = c * tau + rtol * abs(ar) + atol * (2.0 / q.diameter) ** 2
    ap, vp = _area_volume(g, tau)
    am, vm = _area_volume(g, -tau)
    fd_diff = ((ap ** 1.5 - 6 * math.sqrt(math.pi) * vp)
               - (am ** 1.5 - 6 * math.sqrt(math.pi) * vm)) / (2 * tau)
    probe = FlowProbe(tau, ar, f1, iso_difference_rate(g), fd_diff, c, band,
                      g.meta.get("name", ""), g.n)
    if check and probe.agreement > band:
        raise VerificationFailure(
            f"dI/dt mismatch on {probe.surface}: analytic {ar!r}, fd {f1!r}", [probe.report()])
    return probe
