import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from polyquant.errors import DegenerateBisector, InvalidArgument, InvalidInterval
from polyquant.geometry import Segment, make_polygon, rotation_map
from polyquant.measure import (TRIANGLE_G, TRIANGLE_H, TRIANGLE_I, QuantizerSet, UniformMeasure, boundary_measure,
                               convert, distortion, restricted_distortion, rho, segment_distortion_exact, side_weight,
                               triangle_measure, voronoi_breakpoint_on_segment, voronoi_cells)
from polyquant.unconstrained import side_points

S3 = math.sqrt(3)


def riemann(points, polygon, per_side=100_000, convention="arclength"):
    """Midpoint-rule reference written independently of the library."""
    t = (np.arange(per_side) + 0.5) / per_side
    S = np.asarray(points)
    total = 0.0
    for j in range(polygon.k):
        a, b = polygon.vertices[j], polygon.vertices[(j + 1) % polygon.k]
        x = a + t[:, None] * (b - a)
        d2 = np.min(((x[:, None, :] - S[None]) ** 2).sum(-1), axis=1)
        total += d2.mean()
    return side_weight(polygon.k, convention) * total


quantizers = st.integers(0, 2 ** 31).map(lambda s: np.random.default_rng(s).uniform(-1.2, 1.2, (7, 2)))


def test_rho_examples(hexagon):
    assert rho(hexagon.vertex(1), hexagon.vertex(2)) == pytest.approx(1)
    assert rho((0, 0), (0, 1)) == 1
    assert rho(hexagon.vertex(1), hexagon.vertex(4)) == pytest.approx(4)
    assert rho((0.3, 0.2), (0.3, 0.2)) == 0


def test_boundary_density():
    assert boundary_measure(make_polygon(6)).mass == pytest.approx(1, abs=1e-12)
    for k in (3, 4, 8):
        assert boundary_measure(make_polygon(k)).mass == pytest.approx(2 * math.sin(math.pi / k))
        assert boundary_measure(make_polygon(k), "probability").mass == pytest.approx(1)
        assert boundary_measure(make_polygon(k), "parameter").mass == pytest.approx(k)
    with pytest.raises(InvalidArgument):
        side_weight(6, "bogus")
    with pytest.raises(InvalidArgument):
        UniformMeasure((Segment([0, 0], [1, 0]),), 0.0)


def test_convert_round_trip():
    assert convert(convert(0.3, 5, "arclength", "parameter"), 5, "parameter", "arclength") == pytest.approx(0.3)
    assert convert(0.3, 6, "arclength", "probability") == pytest.approx(0.3)


def test_segment_integral_examples(hexagon):
    L1 = hexagon.side(1)
    assert segment_distortion_exact(L1, 0, 0.5, hexagon.vertex(1), density=1 / 6) == pytest.approx(1 / 144, abs=1e-15)
    assert segment_distortion_exact(L1, 0.3, 0.3, (5, 5)) == 0
    mid = (0, -S3 / 2)
    assert segment_distortion_exact(L1, 0, 1, mid, density=1 / 6) == pytest.approx(1 / 72, abs=1e-15)
    with pytest.raises(InvalidInterval):
        segment_distortion_exact(L1, 0.6, 0.2, mid)


@given(st.floats(0, 1), st.floats(0, 1), st.floats(-2, 2), st.floats(-2, 2))
def test_segment_integral_matches_quadrature(t0, t1, sx, sy):
    t0, t1 = min(t0, t1), max(t0, t1)
    seg = Segment([0.2, -1.0], [1.3, 0.4])
    ref, _ = quad(lambda t: float(np.sum((seg.point(t) - (sx, sy)) ** 2)), t0, t1, epsabs=1e-14)
    got = segment_distortion_exact(seg, t0, t1, (sx, sy), density=0.7, arclength_scale=1.5)
    assert got == pytest.approx(1.05 * ref, rel=1e-10, abs=1e-14)


def test_breakpoint_examples():
    seg = Segment([-1, 0], [1, 0])
    assert voronoi_breakpoint_on_segment(seg, (-0.5, 1), (0.5, 1)).t == pytest.approx(0.5)
    tri = make_polygon(3)
    hit = voronoi_breakpoint_on_segment(tri.side(1), tri.vertex(1), (0, 0))
    assert hit.t == pytest.approx(1 / 3)
    assert hit.nearer == 0
    miss = voronoi_breakpoint_on_segment(seg, (0, 1), (0, 5))
    assert miss.t is None and miss.nearer == 0
    with pytest.raises(DegenerateBisector):
        voronoi_breakpoint_on_segment(seg, (0.1, 0.2), (0.1, 0.2))


def test_voronoi_cells_merge_and_cover(hexagon):
    L1 = hexagon.side(1)
    cells = voronoi_cells(L1, [hexagon.vertex(1), hexagon.vertex(2), (0, -S3 / 2), (0, 5)])
    assert [c[2] for c in cells] == [0, 2, 1]
    assert cells[0][0] == 0 and cells[-1][1] == 1
    assert [c[1] for c in cells[:-1]] == pytest.approx([0.25, 0.75])


def test_distortion_examples(hexagon):
    assert distortion(hexagon.vertices, hexagon).total == pytest.approx(1 / 12, abs=1e-15)
    tri = make_polygon(3)
    centre = np.vstack([tri.vertices, [0, 0]])
    midpoint = np.vstack([tri.vertices, [0, -0.5]])
    # unit mass per unit of side parameter
    assert distortion(centre, tri, "parameter").total == pytest.approx(0.5, abs=1e-14)
    assert distortion(midpoint, tri, "parameter").total == pytest.approx(9 / 16, abs=1e-14)
    # density 1/k per unit length
    assert distortion(centre, tri).total == pytest.approx(1 / (2 * S3), abs=1e-14)
    with pytest.raises(InvalidArgument):
        distortion(np.empty((0, 2)), hexagon)


def test_restricted_distortion_examples(hexagon):
    assert restricted_distortion(hexagon.vertices, hexagon, segments=[]) == 0
    q = QuantizerSet.from_parts([TRIANGLE_G, TRIANGLE_H, TRIANGLE_I], [(-0.5, 0), (0.5, 0)])
    value = restricted_distortion(q, triangle_measure(), segments=["GI", "HI"])
    assert value == pytest.approx((2 - S3) / 6, abs=1e-14)
    assert restricted_distortion(hexagon.vertices, hexagon, segments=["L1", 2]) == pytest.approx(2 / 72)
    with pytest.raises(InvalidArgument):
        restricted_distortion(hexagon.vertices, hexagon, segments=["L9"])


@pytest.mark.parametrize("k", range(3, 13))
@pytest.mark.parametrize("m", range(2, 7))
def test_equally_spaced_side_closed_form(k, m):
    poly = make_polygon(k)
    value = restricted_distortion(side_points(k, m), poly, segments=["L1"])
    assert value == pytest.approx(2 * math.sin(math.pi / k) ** 3 / (3 * k * (m - 1) ** 2), rel=0, abs=1e-12)


@given(quantizers, st.integers(3, 9), st.integers(1, 8))
def test_rotation_invariance(pts, k, j):
    poly = make_polygon(k)
    T = rotation_map(k).power(j)
    a = distortion(pts, poly).total
    b = distortion(T(pts), boundary_measure(poly).transformed(T)).total
    assert b == pytest.approx(a, abs=1e-12)


@given(quantizers, st.integers(3, 9))
def test_breakdown_is_additive(pts, k):
    poly = make_polygon(k)
    br = distortion(pts, poly)
    assert math.fsum(v for _, v in br.per_segment) == pytest.approx(br.total, abs=1e-12)
    assert all(v >= 0 for _, v in br.per_segment)
    assert [lab for lab, _ in br.per_segment] == [f"L{j}" for j in range(1, k + 1)]


@pytest.mark.parametrize("seed", range(4))
def test_agrees_with_dense_riemann_sum(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(3, 10))
    poly = make_polygon(k)
    pts = rng.uniform(-1, 1, (int(rng.integers(3, 12)), 2))
    assert distortion(pts, poly).total == pytest.approx(riemann(pts, poly), rel=1e-6)


def test_quantizer_set():
    q = QuantizerSet.from_parts([[0, 0], [1, 0]], [[0.5, 0.5]])
    assert len(q) == 3
    assert q.free.tolist() == [[0.5, 0.5]]
    assert q.fixed.shape == (2, 2)
    with pytest.raises(InvalidArgument):
        QuantizerSet.from_parts([[0, 0]], [[0, 0]])
    with pytest.raises(InvalidArgument):
        QuantizerSet([[0, 0], [1, 1]], [True])
    assert np.allclose(q.transformed(rotation_map(4)).points[1], [0, 1])
