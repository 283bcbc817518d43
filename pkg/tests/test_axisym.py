import math

import numpy as np
import pytest

from conftest import build
from surfineq.axisym import (
    ProfileError,
    SingularRevolvedBody,
    axial_stats,
    curvature_power,
    diameter,
    exact_singular_M,
    mean_curvature,
    segment_deviation,
    simon_report,
    surface_quantities,
    topping_deficit,
    validate_generating_curve,
    width,
    width_table,
)
from surfineq.curve import AngleFunction, CurveError

REL = 1e-5


def test_sphere_identities(unit_sphere):
    q = surface_quantities(unit_sphere)
    four_pi = 4 * math.pi
    assert q.area == pytest.approx(four_pi, rel=REL)
    assert q.volume == pytest.approx(four_pi / 3, rel=REL)
    assert q.total_H == pytest.approx(four_pi, rel=REL)
    assert q.total_abs_H == pytest.approx(four_pi, rel=REL)
    assert q.willmore == pytest.approx(four_pi, rel=REL)
    assert q.diameter == pytest.approx(2.0, rel=REL)
    assert q.iso_ratio == pytest.approx(6 * math.sqrt(math.pi), rel=REL)
    assert q.E == pytest.approx(3.0, rel=REL)
    assert q.E_prime == pytest.approx(3 / (2 * math.sqrt(math.pi)), rel=REL)


def test_sphere_mean_curvature_is_one(unit_sphere):
    assert np.allclose(mean_curvature(unit_sphere), 1.0, atol=1e-6)


def test_curvature_power_p2_is_willmore(unit_sphere):
    q = surface_quantities(unit_sphere)
    assert curvature_power(unit_sphere, 2) == pytest.approx(q.willmore, rel=1e-12)


def test_cigar_matches_closed_forms(cigar01):
    q = surface_quantities(cigar01)
    ex = cigar01.meta["exact"]
    # the curvature jump between cap and cylinder limits the accuracy
    assert q.area == pytest.approx(ex["area"], rel=1e-4)
    assert q.volume == pytest.approx(ex["volume"], rel=1e-4)
    assert q.total_H == pytest.approx(ex["total_H"], rel=1e-5)
    assert q.diameter == pytest.approx(ex["diameter"], rel=1e-5)
    assert q.willmore == pytest.approx(ex["willmore"], rel=1e-3)


def test_total_abs_H_bounds_total_H():
    g = build("dumbbell", neck=0.3, bulge=1.0)
    q = surface_quantities(g)
    assert q.total_abs_H >= abs(q.total_H)
    assert q.total_abs_H >= q.total_abs_H_direct - 1e-12
    assert q.total_abs_H > q.total_H + 1.0


def test_diameter_pair_on_sphere(unit_sphere):
    d, (s1, s2) = diameter(unit_sphere)
    assert d == pytest.approx(2.0, rel=REL)


def test_width_symmetry_and_values():
    g = build("spheroid", a=2.0, c=1.0)
    assert width(g, 0.0) == pytest.approx(2.0, rel=1e-6)
    assert width(g, math.pi / 2) == pytest.approx(4.0, rel=1e-6)
    alphas = np.linspace(0, math.pi, 13)
    t = width_table(g, alphas)
    assert np.allclose(t, t[::-1], rtol=1e-12, atol=1e-12)
    assert np.allclose(t, [width(g, a) for a in alphas], rtol=1e-12)


def test_validation_rejects_bad_profiles():
    n, L = 256, math.pi
    with pytest.raises(ProfileError, match="bad pole tangents"):
        validate_generating_curve(AngleFunction(L, np.linspace(0.1, math.pi, n + 1)))
    with pytest.raises(ProfileError, match="bad pole tangents"):
        validate_generating_curve(AngleFunction(L, np.linspace(0, 3.0, n + 1)))
    with pytest.raises(ProfileError, match="open profile"):
        # half circle traversed too slowly: never returns to the axis
        validate_generating_curve(AngleFunction(2 * L, np.concatenate(
            [np.linspace(0, math.pi / 4, n // 2 + 1), np.linspace(math.pi / 4, math.pi, n // 2 + 1)[1:]])))
    s = np.linspace(0, 1, n + 1)
    pinch = np.where(s < 0.5, math.pi * s, math.pi * s)
    pinch = math.pi * s + 2.5 * np.sin(2 * math.pi * s)
    with pytest.raises(ProfileError):
        validate_generating_curve(AngleFunction(math.pi, pinch))


def test_profile_error_is_curve_error():
    assert issubclass(ProfileError, CurveError)


def test_scaling_laws(unit_sphere):
    g = build("spheroid", a=1.5, c=1.0)
    q1 = surface_quantities(g)
    q2 = surface_quantities(g.scaled(3.0))
    assert q2.area == pytest.approx(9 * q1.area, rel=1e-12)
    assert q2.volume == pytest.approx(27 * q1.volume, rel=1e-12)
    assert q2.total_H == pytest.approx(3 * q1.total_H, rel=1e-12)
    assert q2.willmore == pytest.approx(q1.willmore, rel=1e-12)
    assert q2.diameter == pytest.approx(3 * q1.diameter, rel=1e-12)


def test_topping_on_sphere_and_cigar(unit_sphere, cigar01):
    r = topping_deficit(unit_sphere)
    assert r.ratio == pytest.approx(2.0, rel=1e-6)
    c = topping_deficit(cigar01)
    assert c.passed and c.deficit > 0
    # frozen at n = 4096
    assert c.lhs == pytest.approx(3.203195819082851, rel=1e-10)


def test_axial_stats_sphere(unit_sphere):
    st = axial_stats(unit_sphere)
    assert st.a == pytest.approx(2.0, rel=1e-6)
    assert st.a_bar == pytest.approx(2.0, rel=1e-6)
    assert st.a_star == pytest.approx(2.0, rel=1e-6)
    assert st.b_star == pytest.approx(1.0, rel=1e-6)
    # int_0^1 sqrt(1 - sin(pi t)) dt = (4/pi)(sqrt 2 - 1)
    assert st.U == pytest.approx((4 / math.pi * (math.sqrt(2) - 1)) ** 2, rel=1e-6)


def test_simon_report_holds(unit_sphere, cigar01):
    for g in (unit_sphere, cigar01):
        r = simon_report(g)
        assert r.passed
        assert r.lhs >= r.extra["half_bound"]


def test_singular_body_closed_form():
    body = SingularRevolvedBody(1.0, 0.0, 0.01)
    M, d = exact_singular_M(body)
    th = math.atan(0.02)
    assert M == pytest.approx(math.pi + 2 * math.pi * th * 0.01, rel=1e-14)
    assert d == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(CurveError):
        SingularRevolvedBody(1.0, 0.5, 0.1)


def test_segment_deviation_shrinks_for_thin_cones():
    vals = [segment_deviation(build("double_cone", eps=e, delta=1e-3))[0] for e in (0.04, 0.02)]
    assert vals[1] < vals[0]
    sph = segment_deviation(build("sphere", R=1.0))
    # unit diameter, L = pi / 2: 2 L^2 (1 - 2 / pi)
    assert sph[0] == pytest.approx(2 * (math.pi / 2) ** 2 * (1 - 2 / math.pi), rel=1e-6)
