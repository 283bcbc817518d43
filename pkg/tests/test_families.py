import math

import numpy as np
import pytest

from conftest import build
from surfineq import families
from surfineq.axisym import ProfileError, surface_quantities
from surfineq.curve import CurveError


@pytest.mark.parametrize("name,params", [
    ("sphere", {"R": 2.0}),
    ("spheroid", {"a": 3.0, "c": 1.0}),
    ("cigar", {"eps": 0.05}),
    ("pancake", {"eps": 0.05}),
    ("gamma", {"h": 1.0, "a": 0.1, "A": 0.3, "delta": 1e-2}),
])
def test_convex_families_are_convex(name, params):
    g = build(name, 2048, **params)
    assert g.is_convex()
    assert g.meta["family"] == name


def test_nonconvex_families():
    assert not build("broken_line", 2048, eps=0.1, delta=1e-2).is_convex()
    assert not build("dumbbell", 2048, neck=0.3, bulge=1.0).is_convex()


def test_spheroid_closed_forms():
    a, c = 2.0, 1.0
    g = build("spheroid", a=a, c=c)
    q = surface_quantities(g)
    e = math.sqrt(1 - c * c / (a * a))
    area = 2 * math.pi * a * a * (1 + (1 - e * e) / e * math.atanh(e))
    assert q.area == pytest.approx(area, rel=1e-6)
    assert q.volume == pytest.approx(4 / 3 * math.pi * a * a * c, rel=1e-6)


def test_pancake_limits():
    g = build("pancake", eps=0.01)
    q = surface_quantities(g)
    # twice the unit disk plus the rim
    assert q.area == pytest.approx(2 * math.pi + 2 * math.pi ** 2 * 0.01, rel=1e-2)
    assert q.diameter == pytest.approx(2.02, rel=1e-5)


def test_mollified_gamma_approaches_singular_body():
    g = build("gamma", 8192, h=1.0, a=0.1, A=0.1, delta=1e-3)
    q = surface_quantities(g)
    ex = g.meta["exact"]
    # a = A is a cylinder with flat ends; rounding corners shrinks M by O(delta)
    assert q.total_abs_H == pytest.approx(ex["total_abs_H"], rel=2e-3)
    assert q.diameter == pytest.approx(ex["diameter"], rel=1e-3)


def test_singular_limit_beats_single_delta():
    def build_cone(delta, n):
        return families.double_cone(0.04, delta, n)

    lim = families.singular_limit(build_cone, 1e-3, n=4096)
    body = families.SingularRevolvedBody(1.0, 0.0, 0.04)
    M, d = families.exact_singular_M(body)
    exact = M / d - math.pi
    direct = surface_quantities(build_cone(1e-3, 4096))
    direct_def = direct.total_abs_H / direct.diameter - math.pi
    assert abs(lim.deficit - exact) < 0.2 * abs(direct_def - exact)
    assert lim.deltas == (1e-3, 2e-3, 4e-3)
    assert lim.raw.shape == (3, 5)


def test_raised_cosine_cdf():
    u = np.linspace(-0.5, 0.5, 11)
    r = families._raised_cosine_cdf(u)
    assert r[0] == pytest.approx(0.0, abs=1e-15)
    assert r[-1] == pytest.approx(1.0, abs=1e-15)
    assert np.all(np.diff(r) > 0)
    assert np.allclose(r + r[::-1], 1.0)


def test_random_lipschitz_seeded_and_bounded():
    a = families.random_lipschitz(3, n=1024)
    b = families.random_lipschitz(3, n=1024)
    c = families.random_lipschitz(4, n=1024)
    assert np.array_equal(a.theta, b.theta)
    assert not np.array_equal(a.theta, c.theta)
    assert a.meta["seed"] == 3
    assert a.angle.lipschitz <= 12.0 * (1 + 1e-9)


def test_random_lipschitz_thickness():
    for seed in range(10):
        g = families.random_lipschitz(seed, n=1024)
        inner = slice(g.n // 20, g.n - g.n // 20)
        assert g.x[inner].min() > 0.02 * g.length


def test_dumbbell_has_negative_mean_curvature():
    from surfineq.axisym import mean_curvature

    g = build("dumbbell", neck=0.3, bulge=1.0)
    assert mean_curvature(g).min() < 0
    with pytest.raises(ProfileError):
        families.dumbbell(1.2, 1.0)


def test_make_family_errors():
    with pytest.raises(CurveError):
        families.make_family("torus")
    with pytest.raises(TypeError):
        families.make_family("cigar", {"R": 1.0})
