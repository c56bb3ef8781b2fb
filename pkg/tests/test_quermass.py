"""Quermassintegrals, calibration inverses, and integral identities."""

from math import cos, pi, sin, sqrt

import numpy as np
import pytest

from horoflow import (
    NonMonotonic,
    NotMeanConvex,
    OutOfRange,
    build_geometry,
    centered_sphere,
    f_k,
    heintze_karcher_gap,
    hsiung_minkowski_residual,
    off_center_sphere,
    perturbed_sphere,
    quermassintegrals,
    rho_k,
    sphere_quermass,
    sphere_weighted,
    weighted_functional,
)
from horoflow.quermass import _invert_on_spheres, calibration_table


def test_sphere_quermass_closed_forms_n2():
    assert sphere_quermass(pi / 4, 2, 0) == pytest.approx(pi * (pi / 2 - 1), abs=1e-12)
    assert sphere_quermass(pi / 4, 2, 1) == pytest.approx(2 * pi / 3, abs=1e-12)
    assert sphere_quermass(pi / 4, 2, 2) == pytest.approx(pi**2 / 6 + pi / 3, abs=1e-12)


def test_sphere_quermass_vanishing_ball():
    assert sphere_quermass(1e-6, 2, 0) < 1e-12


def test_discrete_quermass_matches_sphere_closed_forms():
    c = centered_sphere(2, 8193, pi / 4)
    W = quermassintegrals(build_geometry(c), c)
    assert W[0] == pytest.approx(pi * (pi / 2 - 1), abs=1e-7)
    assert W[1] == pytest.approx(2 * pi / 3, abs=1e-7)
    assert W[2] == pytest.approx(pi**2 / 6 + pi / 3, abs=1e-7)


def test_circle_quermass_closed_forms():
    c = centered_sphere(1, 512, pi / 3)
    W = quermassintegrals(build_geometry(c), c)
    assert W[0] == pytest.approx(pi, abs=1e-12)
    assert W[1] == pytest.approx(pi * sin(pi / 3), abs=1e-12)
    assert W[2] == pytest.approx(pi, abs=1e-12)


def test_topological_constancy_convex_curves():
    curves = [
        centered_sphere(1, 512, 0.7),
        off_center_sphere(1, 512, pi / 6, pi / 4),
        perturbed_sphere(1, 512, 0.8, 0.03, 3),
    ]
    for c in curves:
        W = quermassintegrals(build_geometry(c), c)
        assert W[2] == pytest.approx(pi, abs=5e-6)


def test_recursion_consistency():
    c = perturbed_sphere(2, 513, 0.8, 0.02, 2)
    g = build_geometry(c)
    W = quermassintegrals(g, c)
    from horoflow.geometry import integrate

    for k in range(1, g.n + 1):
        rebuilt = integrate(g, g.hk[:, k]) / (g.n + 1) + k / (g.n + 2 - k) * W[k - 1]
        assert rebuilt == pytest.approx(W[k + 1], rel=1e-14)


def test_f_k_isoperimetric_calibration():
    w = 2 * pi * (1 - cos(pi / 6))
    assert f_k(w, 1, 1) == pytest.approx(pi * sin(pi / 6), abs=1e-10)


def test_f_k_sphere_fixed_point_sweep():
    for n in (1, 2, 3):
        for k in range(1, n + 1):
            for rho in (0.3, 0.7, 1.1, 1.4):
                w = sphere_quermass(rho, n, k - 1)
                assert f_k(w, n, k) == pytest.approx(sphere_quermass(rho, n, k), abs=1e-10)


def test_f_k_degenerate_and_out_of_range():
    assert f_k(0.0, 2, 1) == 0.0
    with pytest.raises(OutOfRange):
        f_k(1e9, 2, 1)


def test_inverter_rejects_non_monotone():
    with pytest.raises(NonMonotonic):
        _invert_on_spheres(lambda r: np.sin(3 * r), 0.5, "synthetic")


def test_rho_k_sphere_round_trip():
    for n in (1, 2):
        for k in range(1, n + 1):
            for rho in (0.4, 0.8, 1.2):
                w = sphere_quermass(rho, n, k)
                assert rho_k(w, n, k) == pytest.approx(sphere_weighted(rho, n, k), abs=1e-10)


def test_weighted_functional_sphere_value():
    # oracle: 3 W_2 - cos(rho) * area * cot(rho) at rho = pi/4 in closed form
    expected = pi**2 / 2 + pi - sqrt(2.0) * pi
    assert sphere_weighted(pi / 4, 2, 1) == pytest.approx(expected, abs=1e-12)
    c = centered_sphere(2, 8193, pi / 4)
    g = build_geometry(c)
    assert weighted_functional(g, c, 1) == pytest.approx(expected, abs=1e-6)


def test_weighted_functional_vanishes_with_shape():
    vals = [abs(sphere_weighted(rho, 2, 1)) for rho in (0.4, 0.2, 0.1)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 0.1


def test_hsiung_minkowski_zero_on_spheres():
    g = build_geometry(centered_sphere(1, 256, 0.9))
    assert abs(hsiung_minkowski_residual(g, 1)) < 1e-12
    g2 = build_geometry(centered_sphere(2, 1025, 0.7))
    for k in (1, 2):
        assert abs(hsiung_minkowski_residual(g2, k)) < 1e-10


def test_hsiung_minkowski_second_order_convergence():
    res = []
    for N in (256, 512, 1024):
        g = build_geometry(perturbed_sphere(1, N, 0.8, 0.1, 3))
        res.append(abs(hsiung_minkowski_residual(g, 1)))
    assert res[0] / res[1] == pytest.approx(4.0, rel=0.25)
    assert res[1] / res[2] == pytest.approx(4.0, rel=0.25)


def test_hsiung_minkowski_small_on_fine_axisymmetric_grid():
    g = build_geometry(perturbed_sphere(2, 2049, 0.7, 0.02, 2))
    assert abs(hsiung_minkowski_residual(g, 2)) < 1e-6


def test_heintze_karcher_gap():
    g = build_geometry(centered_sphere(1, 256, 0.7))
    assert abs(heintze_karcher_gap(g)) < 1e-12
    gp = build_geometry(perturbed_sphere(1, 1024, 0.8, 0.03, 3))
    assert heintze_karcher_gap(gp) > 0.0


def test_heintze_karcher_rotation_invariance():
    # rotating a curve about the polar axis leaves the gap unchanged
    c = perturbed_sphere(1, 512, 0.8, 0.03, 3)
    gap0 = heintze_karcher_gap(build_geometry(c))
    a = 0.7
    R = np.array([[cos(a), -sin(a), 0.0], [sin(a), cos(a), 0.0], [0.0, 0.0, 1.0]])
    from horoflow import ProfileCurve

    rotated = ProfileCurve(1, c.nodes @ R.T)
    gap1 = heintze_karcher_gap(build_geometry(rotated))
    assert gap1 == pytest.approx(gap0, rel=1e-10)


def test_heintze_karcher_requires_mean_convexity():
    g = build_geometry(perturbed_sphere(1, 512, 0.8, 0.1, 3))  # kappa changes sign
    with pytest.raises(NotMeanConvex):
        heintze_karcher_gap(g)


def test_calibration_table_contents():
    table = calibration_table(2, np.array([pi / 4]))
    lines = table.strip().splitlines()
    header = lines[0].split("\t")
    row = dict(zip(header, (float(v) for v in lines[1].split("\t"))))
    assert row["W_1"] == pytest.approx(2 * pi / 3, abs=1e-12)
    assert row["weighted_1"] == pytest.approx(pi**2 / 2 + pi - sqrt(2.0) * pi, abs=1e-12)
