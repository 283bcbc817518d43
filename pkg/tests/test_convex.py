import math

import numpy as np
import pytest

from conftest import build
from surfineq.axisym import surface_quantities
from surfineq.convex import (
    C_ISO,
    C_MAIN,
    convex_inequality_suite,
    convex_metrics,
    degeneracy,
    max_slicing_residual,
    mean_width_total_H,
    radii,
)
from surfineq.curve import CurveError
from surfineq.reports import VerificationFailure


def test_constants():
    assert C_MAIN == pytest.approx(108 * math.pi)
    assert C_ISO == pytest.approx(54 * math.sqrt(math.pi))


def test_sphere_metrics(unit_sphere):
    D, a0, a1 = degeneracy(unit_sphere)
    assert D == pytest.approx(1.0, abs=1e-6)
    B, twopiB = mean_width_total_H(unit_sphere)
    assert B == pytest.approx(2.0, rel=1e-6)
    assert twopiB == pytest.approx(4 * math.pi, rel=1e-6)
    r_in, r_out = radii(unit_sphere)
    assert r_in == pytest.approx(1.0, rel=1e-6)
    assert r_out == pytest.approx(1.0, rel=1e-6)


def test_cigar_degeneracy(cigar01):
    D, a0, a1 = degeneracy(cigar01)
    # diameter 1 + 2 eps over the width 2 eps
    assert D == pytest.approx(1.02 / 0.02, rel=1e-4)
    assert a0 == pytest.approx(0.0, abs=1e-6)
    assert a1 == pytest.approx(math.pi / 2, abs=1e-6)
    r_in, r_out = radii(cigar01)
    assert r_in == pytest.approx(0.01, rel=1e-3)
    assert r_out == pytest.approx(0.51, rel=1e-4)


def test_pancake_degeneracy():
    D, a0, a1 = degeneracy(build("pancake", eps=0.01))
    assert D == pytest.approx(2.02 / 0.02, rel=1e-4)


def test_spheroid_widths():
    g = build("spheroid", a=2.0, c=1.0)
    m = convex_metrics(g)
    assert m.degeneracy == pytest.approx(2.0, rel=1e-6)
    assert m.widths.max() == pytest.approx(4.0, rel=1e-6)
    assert m.widths.min() == pytest.approx(2.0, rel=1e-6)
    assert m.R_ratio == pytest.approx(2.0, rel=1e-5)


def test_mean_width_matches_total_H():
    for g in (build("spheroid", a=3.0, c=1.0), build("cigar", eps=0.05),
              build("gamma", h=1.0, a=0.1, A=0.1, delta=1e-3)):
        q = surface_quantities(g)
        B, twopiB = mean_width_total_H(g, q)
        assert abs(twopiB - q.total_H) / q.total_H <= 1e-6


def test_nonconvex_rejected():
    with pytest.raises(CurveError):
        degeneracy(build("dumbbell", neck=0.3, bulge=1.0))


def test_slicing_identity():
    assert max_slicing_residual(build("sphere", R=1.0)) < 1e-6
    assert max_slicing_residual(build("spheroid", a=2.0, c=1.0)) < 1e-4
    assert max_slicing_residual(build("cigar", eps=0.01)) < 1e-3


@pytest.mark.parametrize("name,params", [
    ("sphere", {"R": 1.0}),
    ("spheroid", {"a": 4.0, "c": 1.0}),
    ("cigar", {"eps": 0.01}),
    ("pancake", {"eps": 0.01}),
])
def test_suite_passes(name, params):
    reps = convex_inequality_suite(build(name, **params))
    idents = {r.ident for r in reps}
    assert "C int H^2 >= (A/V) int H" in idents
    assert "degeneracy bound p=1.5" in idents
    assert all(r.passed for r in reps if r.asserted)


def test_sphere_suite_values(unit_sphere):
    reps = {r.ident: r for r in convex_inequality_suite(unit_sphere)}
    # Minkowski is an equality on the sphere
    assert reps["Minkowski"].deficit == pytest.approx(0.0, abs=1e-4)
    assert reps["int H <= 2 pi d"].deficit == pytest.approx(0.0, abs=1e-4)
    assert reps["degeneracy bound p=1"].ratio == pytest.approx(4 * math.pi / 2 / math.pi, rel=1e-5)


def test_suite_raises_on_failure(unit_sphere):
    with pytest.raises(VerificationFailure):
        convex_inequality_suite(unit_sphere, rtol=-0.5)
