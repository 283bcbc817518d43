import math

import numpy as np
import pytest

from surfineq.curve import (
    AngleFunction,
    CurveError,
    barrier,
    bending_energy,
    constants,
    enclosed_area,
    extremal_curve,
    extremal_graph,
    f_inverse,
    gage_report,
    is_convex_closed,
    limit_value,
    limit_value_quad,
    minimal_width,
    reconstruct,
    strip_energy_bound,
)

# c_2 from the closed form, frozen
C2 = 0.6777700592706468


def circle(R=1.0, n=4096):
    return reconstruct(AngleFunction.from_function(lambda s: s / R, 2 * math.pi * R, n))


def ellipse(a, b, n=8192):
    # parametrise by the tangent angle: s(phi) = int a b / (a^2 sin^2 + b^2 cos^2)^(3/2)
    phi = np.linspace(0.0, 2 * math.pi, 200001)
    rho = a * a * b * b / (a * a * np.sin(phi) ** 2 + b * b * np.cos(phi) ** 2) ** 1.5
    from scipy import integrate, interpolate
    s = integrate.cumulative_simpson(rho, x=phi, initial=0.0)
    th = interpolate.CubicSpline(s, phi)
    return reconstruct(AngleFunction.from_function(th, float(s[-1]), n))


def test_constant_p1_is_pi():
    assert constants(1).c_p == pytest.approx(math.pi, abs=1e-10)


def test_constant_p2_frozen():
    t = constants(2)
    assert t.c_p == pytest.approx(C2, abs=1e-12)
    assert t.c_p == pytest.approx(0.6777700, abs=1e-6)


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, 5])
def test_closed_forms_match_quadrature(p):
    t = constants(p)
    assert abs(t.c_tilde_p - t.c_tilde_p_quad) <= 1e-8
    assert abs(t.c_p - t.c_p_quad) <= 1e-8
    assert t.discrepancy <= 1e-8


@pytest.mark.parametrize("p", [1.2, 2, 4])
def test_limit_value_closed_vs_quad(p):
    assert limit_value(p) == pytest.approx(limit_value_quad(p), rel=1e-10)


def test_constants_reject_small_p():
    with pytest.raises(CurveError):
        constants(0.5)


def test_barrier_shape():
    t = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    g = barrier(t)
    assert g[0] == 0 and g[-1] == 0
    assert g[2] == pytest.approx(0.5 / math.sqrt(1.25))
    assert g[1] == pytest.approx(g[3])


def test_circle_reconstruction_and_area():
    c = circle(2.0)
    assert c.closed
    assert is_convex_closed(c)
    assert enclosed_area(c) == pytest.approx(4 * math.pi, rel=1e-6)
    assert bending_energy(c, 2) == pytest.approx(math.pi, rel=1e-9)


def test_gage_circle_equality():
    r = gage_report(circle(1.0))
    assert abs(r.deficit) <= 1e-4 * r.rhs


@pytest.mark.parametrize("a,b", [(2, 1), (4, 1)])
def test_gage_ellipse_strict(a, b):
    r = gage_report(ellipse(a, b))
    assert r.deficit > 0


def test_gage_needs_convex_closed():
    open_arc = reconstruct(AngleFunction.from_function(lambda s: s, math.pi, 256))
    with pytest.raises(CurveError):
        gage_report(open_arc)


def test_minimal_width_of_rectangle_like_ellipse():
    c = ellipse(3, 1, n=4096)
    w, phi = minimal_width(c.x, c.z)
    assert w == pytest.approx(2.0, rel=1e-6)
    assert math.sin(phi) == pytest.approx(1.0, abs=1e-5)


def test_strip_bound_strict_on_circle():
    r = strip_energy_bound(circle(1.0), 2)
    assert r.deficit > 0


@pytest.mark.parametrize("p", [1.5, 2, 3])
def test_extremal_curve_is_equality_case(p):
    c = extremal_curve(p, 4096)
    assert c.closed and is_convex_closed(c)
    r = strip_energy_bound(c, p)
    assert 0.999 <= r.ratio <= 1.001
    assert c.x.min() == pytest.approx(-1.0, abs=1e-8)
    assert c.x.max() == pytest.approx(1.0, abs=1e-8)


def test_extremal_junction_curvature_p2():
    c = extremal_curve(2, 4096)
    n = c.angle.n
    for i in (n // 4, 3 * n // 4):
        assert abs(c.kappa[i]) <= 1e-3


@pytest.mark.parametrize("p", [1.5, 2, 3])
def test_extremal_graph_matches_lower_arc(p):
    c = extremal_curve(p, 4096)
    n = c.angle.n
    # bottom vertex at the origin; the first quarter climbs to x = 1
    x, z = c.x[: n // 4 + 1], c.z[: n // 4 + 1]
    xs = np.linspace(0.05, 0.9, 7)
    u, slope = extremal_graph(p, xs)
    assert np.allclose(np.interp(xs, x, z), u, atol=1e-6)
    assert np.all(slope > 0)


def test_f_inverse_round_trip():
    from surfineq.curve import _f_of_angle

    for p in (1.5, 2, 3):
        a = limit_value(p)
        for y in (0.0, 0.1 * a, 0.7 * a):
            t = f_inverse(y, p)
            assert _f_of_angle(math.atan(t), p) == pytest.approx(y, abs=1e-11)
    with pytest.raises(CurveError):
        f_inverse(limit_value(2), 2)


def test_extremal_rejects_p1():
    with pytest.raises(CurveError):
        extremal_curve(1.0, 256)


def test_angle_function_validation():
    with pytest.raises(CurveError):
        AngleFunction(-1.0, np.zeros(5))
    with pytest.raises(CurveError):
        AngleFunction(1.0, np.array([0.0, np.nan, 1.0]))
    with pytest.raises(CurveError):
        AngleFunction(1.0, np.linspace(0, 10, 11), lipschitz=1.0)
    with pytest.raises(CurveError):
        AngleFunction.from_samples([0.0, 0.1, 0.3, 0.4], [0, 0, 0, 0])
