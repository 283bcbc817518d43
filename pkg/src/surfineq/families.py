"""Parametric test surfaces.

Every family is symmetric under reflection through its equatorial plane.
The meridian is built on the lower half and mirrored with
``theta(L - s) = pi - theta(s)``, which closes the profile exactly
(``x(L) = 0``) whatever the quadrature error of the lower half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, interpolate

from .axisym import (
    GeneratingCurve,
    ProfileError,
    SingularRevolvedBody,
    axial_stats,
    exact_singular_M,
    surface_quantities,
    validate_generating_curve,
)
from .curve import AngleFunction, CurveError

DEFAULT_N = 4096


def _mirror(theta_half: np.ndarray) -> np.ndarray:
    return np.concatenate([theta_half, math.pi - theta_half[-2::-1]])


def _from_half(half_func, half_length: float, n: int, meta: dict) -> GeneratingCurve:
    if n % 2:
        n += 1
    s = np.linspace(0.0, half_length, n // 2 + 1)
    th = np.asarray(half_func(s), dtype=float)
    th[0] = 0.0
    th[-1] = 0.5 * math.pi
    angle = AngleFunction(2 * half_length, _mirror(th))
    return validate_generating_curve(angle, meta=meta)


def sphere(R: float = 1.0, n: int = DEFAULT_N) -> GeneratingCurve:
    return _from_half(lambda s: s / R, 0.5 * math.pi * R, n,
                      {"name": f"sphere(R={R:g})", "family": "sphere", "convex": True})


def spheroid(a: float, c: float, n: int = DEFAULT_N) -> GeneratingCurve:
    """Ellipsoid of revolution with equatorial radius ``a`` and polar radius ``c``."""
    u = np.linspace(0.0, 0.5 * math.pi, 20001)
    speed = np.hypot(a * np.cos(u), c * np.sin(u))
    arc = integrate.cumulative_simpson(speed, x=u, initial=0.0)
    u_of_s = interpolate.CubicSpline(arc, u)

    def half(s):
        uu = u_of_s(s)
        return np.arctan2(c * np.sin(uu), a * np.cos(uu))

    return _from_half(half, float(arc[-1]), n,
                      {"name": f"spheroid(a={a:g},c={c:g})", "family": "spheroid",
                       "convex": True})


def cigar(eps: float, n: int = DEFAULT_N) -> GeneratingCurve:
    """Cylinder of radius ``eps`` and height 1 capped by hemispheres."""
    cap = 0.5 * math.pi * eps
    g = _from_half(lambda s: np.minimum(s / eps, 0.5 * math.pi), cap + 0.5, n,
                   {"name": f"cigar(eps={eps:g})", "family": "cigar", "convex": True,
                    "kinks": [cap, cap + 1.0]})
    g.meta["exact"] = {
        "area": 2 * math.pi * eps + 4 * math.pi * eps ** 2,
        "volume": math.pi * eps ** 2 + 4 / 3 * math.pi * eps ** 3,
        "willmore": math.pi / (2 * eps) + 4 * math.pi,
        "total_H": math.pi + 4 * math.pi * eps,
        "diameter": 1 + 2 * eps,
    }
    return g


def pancake(eps: float, n: int = DEFAULT_N) -> GeneratingCurve:
    """Boundary of the ``eps``-neighbourhood of the flat unit disk."""
    g = _from_half(lambda s: np.clip((s - 1.0) / eps, 0.0, 0.5 * math.pi),
                   1.0 + 0.5 * math.pi * eps, n,
                   {"name": f"pancake(eps={eps:g})", "family": "pancake", "convex": True,
                    "kinks": [1.0, 1.0 + math.pi * eps]})
    return g


# -- mollified polygons ------------------------------------------------------


def _wrap(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    r = math.remainder(a, 2 * math.pi)
    return math.pi if r == -math.pi else r


def _raised_cosine_cdf(u):
    """Integral of the kernel ``1 + cos(2 pi u)`` on ``[-1/2, 1/2]``."""
    return u + 0.5 + np.sin(2 * math.pi * u) / (2 * math.pi)


def mollified_polygon(vertices, delta: float, n: int = DEFAULT_N,
                      meta: dict | None = None) -> GeneratingCurve:
    """Meridian through ``vertices`` with every angle jump smoothed over
    arclength ``delta`` by a raised-cosine kernel (the angle stays C^2).

    The piecewise constant angle is extended oddly through both poles, so the
    averaged angle still starts at 0 and ends at ``pi``. The polygon must be
    mirror symmetric about its mid-height.
    """
    v = np.asarray(vertices, dtype=float)
    seg = np.diff(v, axis=0)
    lengths = np.hypot(seg[:, 0], seg[:, 1])
    keep = lengths > 0
    seg, lengths = seg[keep], lengths[keep]
    if delta <= 0 or delta >= lengths.min():
        raise CurveError(f"delta must lie in (0, {lengths.min():g})")
    phis = np.arctan2(seg[:, 1], seg[:, 0])
    if not -0.5 * math.pi < phis[0] <= 0.5 * math.pi:
        raise ProfileError("bad pole tangents", "first edge must leave the axis")
    vals = [float(phis[0])]
    for ph in phis[1:]:
        vals.append(vals[-1] + _wrap(ph - vals[-1]))
    end = vals[-1] + _wrap(math.pi - vals[-1])
    vals = np.array(vals)
    L = float(lengths.sum())
    knots = np.concatenate([[0.0], np.cumsum(lengths)])
    # step function on [-L, 2L]: odd through theta = 0 at s = 0 and theta = end at s = L
    left_k = -knots[::-1]
    right_k = 2 * L - knots[::-1]
    all_k = np.concatenate([left_k[:-1], knots, right_k[1:]])
    all_v = np.concatenate([-vals[::-1], vals, 2 * end - vals[::-1]])
    jumps = np.diff(all_v)
    at = all_k[1:-1]

    if n % 2:
        n += 1
    s = np.linspace(0.0, L, n + 1)
    u = np.clip((s[:, None] - at[None, :]) / delta, -0.5, 0.5)
    th = all_v[0] + (jumps[None, :] * _raised_cosine_cdf(u)).sum(axis=1)
    th[0], th[-1] = 0.0, end
    th = 0.5 * (th + (end - th[::-1]))
    meta = dict(meta or {})
    meta.setdefault("kinks", sorted(set(knots.tolist())))
    meta["delta"] = delta
    return validate_generating_curve(AngleFunction(L, th), meta=meta)


def gamma(h: float, a: float, A: float, delta: float, n: int = DEFAULT_N) -> GeneratingCurve:
    body = SingularRevolvedBody(h, a, A)
    M, d = exact_singular_M(body)
    g = mollified_polygon(
        body.vertices(), delta, n,
        {"name": f"gamma(h={h:g},a={a:g},A={A:g},delta={delta:g})", "family": "gamma",
         "convex": True},
    )
    g.meta["exact"] = {"total_abs_H": M, "diameter": d, "cone_angle": body.cone_angle,
                       "U": 1 - math.cos(body.cone_angle) if a == 0 else None}
    return g


def double_cone(eps: float, delta: float, n: int = DEFAULT_N) -> GeneratingCurve:
    """Two cones of height 1/2 and base radius ``eps`` glued along their bases."""
    return gamma(1.0, 0.0, eps, delta, n)


def broken_line(eps: float, delta: float, n: int = DEFAULT_N) -> GeneratingCurve:
    """Revolved broken line through (0,0), (eps^2,-eps), (eps^2,1+eps), (0,1)."""
    e2 = eps * eps
    g = mollified_polygon(
        [(0.0, 0.0), (e2, -eps), (e2, 1 + eps), (0.0, 1.0)], delta, n,
        {"name": f"broken_line(eps={eps:g},delta={delta:g})", "family": "broken_line",
         "convex": False},
    )
    return g


@dataclass(frozen=True)
class SingularLimit:
    """Topping statistics of a mollified family extrapolated to ``delta -> 0``."""

    deficit: float
    U: float
    V_remainder: float
    total_abs_H: float
    diameter: float
    deltas: tuple[float, ...]
    n: int
    raw: np.ndarray

    @property
    def deficit_over_U(self) -> float:
        return self.deficit / self.U

    @property
    def deficit_over_V(self) -> float:
        return self.deficit / self.V_remainder


def _topping_stats(g: GeneratingCurve) -> np.ndarray:
    q = surface_quantities(g)
    st = axial_stats(g)
    return np.array([q.total_abs_H / q.diameter - math.pi, st.U, st.V_remainder,
                     q.total_abs_H, q.diameter])


def singular_limit(build, delta: float, n: int = 8192) -> SingularLimit:
    """Extrapolate the Topping statistics of ``build(delta, n)`` to the
    singular surface.

    The mollification error is smooth in ``delta`` and the trapezoid error
    is quadratic in ``h``, with constants of size ``h^2 / delta``. Each
    statistic is Richardson extrapolated in ``h`` from ``n`` and ``n / 2``
    and then fitted by a quadratic in ``delta`` through ``delta``,
    ``2 delta`` and ``4 delta``, evaluated at zero.
    """
    rows = []
    for k in (1, 2, 4):
        fine = _topping_stats(build(k * delta, n))
        coarse = _topping_stats(build(k * delta, n // 2))
        rows.append(fine + (fine - coarse) / 3.0)
    r = np.array(rows)
    lim = (8 * r[0] - 6 * r[1] + r[2]) / 3.0
    return SingularLimit(*map(float, lim), deltas=(delta, 2 * delta, 4 * delta), n=n, raw=r)


# -- smooth nonconvex profiles ---------------------------------------------


def dumbbell(neck: float, bulge: float, n: int = DEFAULT_N, elongation: float = 1.0,
             sharpness: float = 0.35) -> GeneratingCurve:
    """Two bulbs of radius ``bulge`` joined by a neck of radius ``neck``.

    The meridian is ``x = bulge sin(u) w(u)``, ``z = elongation bulge (1 - cos u)``
    with a Gaussian dip ``w`` centred on the equator.
    """
    if not 0 < neck < bulge:
        raise ProfileError("pinched profile", "need 0 < neck < bulge")
    u = np.linspace(0.0, 0.5 * math.pi, 40001)
    depth = 1.0 - neck / bulge
    w = 1.0 - depth * np.exp(-(((u - 0.5 * math.pi) / sharpness) ** 2))
    dw = depth * np.exp(-(((u - 0.5 * math.pi) / sharpness) ** 2)) * 2 * (u - 0.5 * math.pi) / sharpness ** 2
    dx = bulge * (np.cos(u) * w + np.sin(u) * dw)
    dz = elongation * bulge * np.sin(u)
    arc = integrate.cumulative_simpson(np.hypot(dx, dz), x=u, initial=0.0)
    ang = np.unwrap(np.arctan2(dz, dx))
    ang -= ang[0]
    th_of_s = interpolate.CubicSpline(arc, ang)
    return _from_half(th_of_s, float(arc[-1]), n,
                      {"name": f"dumbbell(neck={neck:g},bulge={bulge:g})", "family": "dumbbell",
                       "convex": False})


def random_lipschitz(seed: int, K: float = 12.0, n: int = DEFAULT_N, modes: int = 6,
                     amplitude: float = 1.6, max_tries: int = 1000) -> GeneratingCurve:
    """Seeded random admissible profile with Lipschitz angle bounded by ``K``.

    The half-profile angle is ``pi t / 2 + sum_k c_k sin(k pi t)`` in the
    relative position ``t``; draws that pinch or point downward are redrawn
    from the same generator.
    """
    rng = np.random.default_rng(seed)
    t_fine = np.linspace(0.0, 1.0, 4001)
    k = np.arange(1, modes + 1)
    for attempt in range(max_tries):
        c = rng.uniform(-amplitude, amplitude, modes) / k
        slope = 0.5 * math.pi + (c * k * math.pi * np.cos(np.outer(t_fine, k) * math.pi)).sum(axis=1)
        half_length = max(float(np.abs(slope).max()) / K, 0.05)

        def half(s, c=c, half_length=half_length):
            t = s / half_length
            return 0.5 * math.pi * t + (c * np.sin(np.outer(t, k) * math.pi)).sum(axis=1)

        try:
            g = _from_half(half, half_length, n,
                           {"name": f"random(seed={seed},K={K:g})", "family": "random_lipschitz",
                            "seed": seed, "attempt": attempt, "coefficients": c.tolist()})
        except ProfileError:
            continue
        inner = slice(g.n // 20, g.n - g.n // 20)
        if np.min(g.x[inner]) > 0.02 * g.length:
            return g
    raise ProfileError("pinched profile", f"no admissible draw for seed {seed}")


FAMILIES = {
    "sphere": sphere,
    "spheroid": spheroid,
    "cigar": cigar,
    "pancake": pancake,
    "gamma": gamma,
    "double_cone": double_cone,
    "broken_line": broken_line,
    "dumbbell": dumbbell,
    "random_lipschitz": random_lipschitz,
}


def make_family(name: str, params: dict | None = None, n: int = DEFAULT_N) -> GeneratingCurve:
    try:
        build = FAMILIES[name]
    except KeyError:
        raise CurveError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return build(**(params or {}), n=n)
