import dataclasses
import math

import numpy as np
import pytest

from polyquant.circle_constrained import circumcircle_optimal_set, incircle_optimal_set
from polyquant.errors import InstanceTooLarge, InvalidArgument
from polyquant.geometry import make_polygon
from polyquant.measure import QuantizerSet, distortion
from polyquant.oracle import (BoundaryDistortion, OracleConfig, aligned_displacement, exhaustive_allocation_check,
                              global_minimize, sampled_distortion, verify)
from polyquant.unconstrained import error as unconstrained_error
from polyquant.unconstrained import optimal_set

S3 = math.sqrt(3)
FAST = OracleConfig(restarts=8)


def rotate(points, angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.asarray(points) @ np.array([[c, s], [-s, c]])


def perturbed(report, index, angle):
    """The same report with free point ``index`` turned by ``angle`` about the centre."""
    pts = np.array(report.quantizer.points)
    where = np.flatnonzero(~report.quantizer.conditional)[index]
    pts[where] = rotate(pts[where], angle)
    q = QuantizerSet(pts, report.quantizer.conditional)
    value = distortion(q, make_polygon(report.k)).total
    return dataclasses.replace(report, quantizer=q, value=value, direct_value=value)


# ---------------------------------------------------------------- sampling

def test_config_validation():
    with pytest.raises(InvalidArgument):
        OracleConfig(restarts=0)
    with pytest.raises(InvalidArgument):
        OracleConfig(value_tolerance=-1.0)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("POLYQUANT_SEED", "123")
    assert OracleConfig().seed == 123


def test_sampled_distortion_examples():
    hexagon = make_polygon(6)
    assert sampled_distortion(hexagon.vertices, hexagon) == pytest.approx(1 / 12, rel=1e-6)
    tri = make_polygon(3)
    beta = np.vstack([tri.vertices, [[0, 0]]])
    assert sampled_distortion(beta, tri, convention="parameter") == pytest.approx(0.5, rel=1e-6)
    assert sampled_distortion(beta, tri) == pytest.approx(1 / (2 * S3), rel=1e-6)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sampled_matches_exact_on_random_sets(seed):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1, 1, (10, 2))
    for k in (4, 6):
        poly = make_polygon(k)
        assert sampled_distortion(pts, poly) == pytest.approx(distortion(pts, poly).total, rel=1e-5)


def _sampling_errors(pts, poly, counts):
    exact = distortion(pts, poly).total
    return np.array([abs(sampled_distortion(pts, poly, OracleConfig(boundary_samples_per_side=s)) - exact)
                     for s in counts])


def test_sampling_error_is_quadratic_for_smooth_cells():
    # vertex cells end at side midpoints, which are sample-cell edges here
    poly = make_polygon(5)
    errs = _sampling_errors(poly.vertices, poly, (200, 400, 800))
    assert np.allclose(errs[:-1] / errs[1:], 4.0, rtol=1e-6)


def test_sampling_error_trend_with_kinks():
    poly = make_polygon(5)
    pts = np.random.default_rng(7).uniform(-0.8, 0.8, (7, 2))
    counts = (100, 200, 400, 800, 1600)
    slope = np.polyfit(np.log(counts), np.log(_sampling_errors(pts, poly, counts)), 1)[0]
    assert -2.3 < slope < -1.6


@pytest.mark.parametrize("k", [3, 5, 6])
def test_evaluator_gradient(k):
    f = BoundaryDistortion(make_polygon(k))
    sites = np.random.default_rng(k).uniform(-0.9, 0.9, (6, 2))
    value, grad = f.value_and_grad(sites)
    assert value == pytest.approx(distortion(sites, make_polygon(k)).total, abs=1e-14)
    h = 1e-6
    num = np.zeros_like(sites)
    for i in range(sites.shape[0]):
        for j in range(2):
            e = np.zeros_like(sites)
            e[i, j] = h
            num[i, j] = (f(sites + e) - f(sites - e)) / (2 * h)
    assert np.allclose(grad, num, atol=1e-8)


# ---------------------------------------------------------------- global search

def test_global_circumcircle_one_point():
    q, value = global_minimize("circumcircle", 1, 6, FAST)
    assert value == pytest.approx(S3 / 2 - 19 / 24, abs=1e-6)
    # the site is (0, -1) up to a rotation of the hexagon
    angle = math.atan2(q.free[0, 1], q.free[0, 0]) - 1.5 * math.pi
    assert min(abs(angle - j * math.pi / 3) % (2 * math.pi) for j in range(-12, 12)) < 1e-4
    assert np.hypot(*q.free[0]) == pytest.approx(1.0)


def test_global_unconstrained_one_point():
    q, value = global_minimize("none", 1, 6, FAST)
    assert value == pytest.approx(7 / 96, abs=1e-8)
    r = np.hypot(*q.free[0])
    assert r == pytest.approx(S3 / 2, abs=1e-6)  # a side midpoint


def test_global_minimize_is_deterministic():
    a = global_minimize("incircle", 3, 6, FAST)
    b = global_minimize("incircle", 3, 6, FAST)
    assert a[1] == b[1]
    assert np.array_equal(a[0].points, b[0].points)


def test_global_minimize_without_free_points():
    q, value = global_minimize("diag-short", 0, 6, FAST)
    assert value == pytest.approx(1 / 12)
    assert len(q) == 6


@pytest.mark.parametrize("k,n", [(4, 6), (6, 8), (6, 11), (5, 9)])
def test_oracle_never_beats_exact_optimum(k, n):
    for value, free, regime in ((unconstrained_error(k, n), n - k, "none"),
                                (circumcircle_optimal_set(k, n)[1], n - k, "circumcircle")):
        found = global_minimize(regime, free, k, FAST)[1]
        assert found >= value - FAST.value_tolerance
        assert found == pytest.approx(value, abs=1e-6)


# ---------------------------------------------------------------- allocations

def test_exhaustive_hexagon_eight():
    table = exhaustive_allocation_check(6, 8)
    assert len(table.minimizers) == 15
    assert table.balanced_are_minimizers
    assert table.best_value == pytest.approx(1 / 16)


def test_exhaustive_square_nine():
    table = exhaustive_allocation_check(4, 9)
    assert len(table.minimizers) == math.comb(4, 1)
    assert table.balanced_are_minimizers


def test_exhaustive_circumcircle_thirteen():
    table = exhaustive_allocation_check(6, 13, "circumcircle")
    assert table.balanced_are_minimizers
    assert sorted(table.best) == [3, 3, 3, 3, 3, 4]
    assert table.best_value == pytest.approx(circumcircle_optimal_set(6, 13)[1], abs=1e-15)


def test_exhaustive_incircle():
    table = exhaustive_allocation_check(6, 14, "incircle")
    assert table.balanced_are_minimizers
    assert table.best_value == pytest.approx(incircle_optimal_set(6, 14)[1], abs=1e-15)


def test_exhaustive_limits():
    with pytest.raises(InstanceTooLarge):
        exhaustive_allocation_check(12, 60)
    with pytest.raises(InvalidArgument):
        exhaustive_allocation_check(6, 8, "diag-short")
    with pytest.raises(InvalidArgument):
        exhaustive_allocation_check(6, 5)


# ---------------------------------------------------------------- verdicts

def test_verify_incircle_thirteen():
    verdict = verify(incircle_optimal_set(6, 13)[2])
    assert verdict.passed
    assert verdict.value_delta < 1e-6
    assert verdict.oracle_value == pytest.approx(0.0189319, abs=1e-6)


def test_verify_unconstrained_nine():
    verdict = verify(optimal_set(6, 9)[2])
    assert verdict.passed
    assert verdict.solver_value == pytest.approx(5 / 96, abs=1e-15)


@pytest.mark.parametrize("solver,n", [(incircle_optimal_set, 13), (circumcircle_optimal_set, 9),
                                      (circumcircle_optimal_set, 7)])
def test_negative_control(solver, n):
    report = solver(6, n)[2]
    bad = perturbed(report, 0, 1e-3)
    verdict = verify(bad, FAST)
    assert not verdict.passed
    assert verdict.max_site_displacement > 1e-4


def test_verdict_is_deterministic():
    report = circumcircle_optimal_set(6, 9)[2]
    assert verify(report, FAST) == verify(report, FAST)


def test_aligned_displacement():
    from polyquant.geometry import dihedral_maps
    pts = np.array([[0.1, -0.9], [0.5, 0.2]])
    maps = dihedral_maps(6)
    assert aligned_displacement(rotate(pts, math.pi / 3), pts, maps) == pytest.approx(0, abs=1e-12)
    assert aligned_displacement(pts[:1], pts, maps) == math.inf
    assert aligned_displacement(pts + [0.01, 0], pts, maps[:1]) == pytest.approx(0.01)
