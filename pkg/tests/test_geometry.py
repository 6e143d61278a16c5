import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyquant.errors import InvalidArgument, UnsupportedConstraint
from polyquant.geometry import (REFLECTION_F, Constraint, RigidMap, Segment, arc_span, constraint_curve, diagonal,
                                isometry_u, make_polygon, reflection_f, rotation_map, symmetries_fixing)

S3 = math.sqrt(3)
coord = st.floats(-3, 3, allow_nan=False)
point = st.tuples(coord, coord).map(np.array)


@pytest.mark.parametrize("k", range(3, 13))
def test_vertex_formula_and_unit_circle(k):
    poly = make_polygon(k)
    for j in range(1, k + 1):
        ang = math.pi * (2 * j - 3) / k
        assert np.allclose(poly.vertex(j), [math.sin(ang), -math.cos(ang)], atol=1e-14)
    assert np.allclose((poly.vertices ** 2).sum(1), 1, atol=1e-14)
    assert poly.vertex(1)[1] == pytest.approx(-math.cos(math.pi / k), abs=1e-14)
    assert poly.vertex(2)[1] == pytest.approx(-math.cos(math.pi / k), abs=1e-14)
    assert poly.side_length == pytest.approx(2 * math.sin(math.pi / k))
    assert poly.side(1).length == pytest.approx(poly.side_length, abs=1e-14)


def test_hexagon_and_triangle_vertices():
    hexagon = make_polygon(6)
    assert np.allclose(hexagon.vertex(1), [-0.5, -S3 / 2])
    assert np.allclose(hexagon.vertex(3), [1, 0])
    assert np.allclose(hexagon.vertex(6), [-1, 0])
    tri = make_polygon(3)
    assert np.allclose(tri.vertex(1), [-S3 / 2, -0.5])
    assert np.allclose(tri.vertex(3), [0, 1])
    assert make_polygon(4).side_length == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("k", [2, 1, 0, -4])
def test_too_few_sides(k):
    with pytest.raises(InvalidArgument):
        make_polygon(k)


def test_segment_parametrization():
    seg = Segment([0, 0], [2, 1])
    assert np.allclose(seg.point(0), seg.p)
    assert np.allclose(seg.point(1), seg.q)
    assert np.allclose(seg.point([0.5]), [[1, 0.5]])
    assert seg.parameter_of([1, 0.5]) == pytest.approx(0.5)
    with pytest.raises(InvalidArgument):
        Segment([1, 1], [1, 1])


@pytest.mark.parametrize("k", [3, 5, 6, 12])
def test_rotation_map(k):
    poly = make_polygon(k)
    T = rotation_map(k)
    for j in range(1, k + 1):
        assert np.allclose(T(poly.vertex(j)), poly.vertex(j + 1), atol=1e-12)
        s, s1 = poly.side(j), poly.side(j + 1)
        assert np.allclose(T(np.array([s.p, s.q])), [s1.p, s1.q], atol=1e-12)
    assert np.allclose(T.power(k)(poly.vertex(1)), poly.vertex(1), atol=1e-12)
    assert np.allclose(T.power(0).matrix, np.eye(2))


def test_rotation_examples():
    T = rotation_map(6)
    assert np.allclose(T([-0.5, -S3 / 2]), [0.5, -S3 / 2])
    assert np.allclose(T([0, -1]), [S3 / 2, -0.5])


@given(point, point, st.integers(3, 12), st.integers(-5, 5))
def test_rigid_maps_preserve_distance(u, v, k, j):
    for g in (rotation_map(k).power(j), isometry_u(), isometry_u().inverse(), REFLECTION_F):
        assert np.sum((g(u) - g(v)) ** 2) == pytest.approx(np.sum((u - v) ** 2), abs=1e-12)


def test_rigid_map_rejects_non_orthogonal():
    with pytest.raises(InvalidArgument):
        RigidMap(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_isometry_u():
    U = isometry_u()
    hexagon = make_polygon(6)
    assert np.allclose(U(hexagon.vertex(6)), [-S3 / 2, 0], atol=1e-14)
    assert np.allclose(U(hexagon.vertex(4)), [S3 / 2, 0], atol=1e-14)
    assert np.allclose(U(hexagon.vertex(5)), [0, 0.5], atol=1e-14)
    assert np.allclose(U([0, 0]), [0, -0.5])
    assert np.allclose(U.inverse()([-S3 / 2, 0]), [-1, 0], atol=1e-14)
    assert np.allclose((U @ U.inverse()).matrix, np.eye(2), atol=1e-14)
    assert np.allclose((U @ U.inverse()).translation, 0, atol=1e-14)


def test_isometry_u_sends_short_diagonal_to_gh():
    seg = diagonal(Constraint.DIAG_SHORT)
    img = isometry_u()(seg.point(np.linspace(0, 1, 100)))
    assert np.allclose(img[:, 1], 0, atol=1e-12)
    assert np.allclose(img[:, 0], np.linspace(-S3 / 2, S3 / 2, 100), atol=1e-12)


def test_reflection_f():
    a = 1 / 6 - 1 / S3
    assert np.allclose(reflection_f([a, S3 * a]), [-a, -S3 * a])
    assert np.allclose(reflection_f([0, 0]), [0, 0])
    hexagon = make_polygon(6)
    assert np.allclose(reflection_f(hexagon.vertex(1)), hexagon.vertex(4))
    assert np.allclose(REFLECTION_F(REFLECTION_F([0.3, -2])), [0.3, -2])


@pytest.mark.parametrize("k", [3, 6, 9])
def test_circumcircle_arcs_end_at_vertices(k):
    poly = make_polygon(k)
    arcs = constraint_curve(poly, "circumcircle")
    assert len(arcs) == k
    for j, arc in enumerate(arcs, start=1):
        assert (arc.theta0, arc.theta1) == pytest.approx(arc_span(k, j))
        a, b = arc.endpoints
        assert np.allclose(a, poly.vertex(j), atol=1e-12)
        assert np.allclose(b, poly.vertex(j + 1), atol=1e-12)


def test_incircle_and_diagonals():
    hexagon = make_polygon(6)
    arcs = constraint_curve(hexagon, Constraint.INCIRCLE)
    assert arcs[0].radius == pytest.approx(S3 / 2)
    (short,) = constraint_curve(hexagon, "diag-short")
    assert np.allclose([short.p, short.q], [[-1, 0], [0.5, S3 / 2]])
    (long_,) = constraint_curve(hexagon, "diag-long")
    assert np.allclose([long_.p, long_.q], [[-0.5, -S3 / 2], [0.5, S3 / 2]])
    assert constraint_curve(hexagon, "none") == []


@pytest.mark.parametrize("c", ["diag-short", "diag-long"])
def test_diagonals_need_hexagon(c):
    with pytest.raises(UnsupportedConstraint):
        constraint_curve(make_polygon(5), c)


def test_symmetries_fixing_diagonals():
    assert len(symmetries_fixing("circumcircle", 6)) == 12
    for c, count in (("diag-short", 2), ("diag-long", 4)):
        seg = diagonal(Constraint(c))
        maps = symmetries_fixing(c, 6)
        assert len(maps) == count
        for g in maps:
            ends = g(np.array([seg.p, seg.q]))
            assert np.allclose(ends, [seg.p, seg.q]) or np.allclose(ends, [seg.q, seg.p])
