"""Hexagon conditional optimal sets with the free points on a diagonal.

Short diagonal ``A6A4``
    Only the sides ``L4`` and ``L5`` reach the diagonal points, and the rigid
    map ``U`` carries triangle ``A6 A4 A5`` onto the triangle ``GHI`` with
    ``GH`` on the x-axis.  The problem becomes one for the measure ``Q`` with
    density 1/2 on ``GI`` and ``HI``, whose free points split into a left
    group serving ``GI`` and a right group serving ``HI``.  Errors relate by
    ``V_n(P) = V_{n-3}(Q) / 3 + 1/18``.

Long diagonal ``A1A4``
    Diagonal points near ``A1`` serve ``L1`` and ``L6``; those near ``A4``
    serve ``L3`` and ``L4``.  The closed-form route assumes the cells of the
    lower group on ``L1`` end at the fixed abscissa ``7/2 - 2 sqrt(3)``, which
    gives equally spaced points and explicit errors.  The exact route instead
    minimises the true distortion of each group; see
    :func:`long_diagonal_optimal_set`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._optimize import central_gradient, multistart, ordered_in_interval
from .errors import InvalidArgument, SolverFailure, TooFewPoints
from .geometry import REFLECTION_F, SQRT3, Constraint, Segment, isometry_u, make_polygon
from .measure import (TRIANGLE_G, TRIANGLE_H, TRIANGLE_I, QuantizerSet, _cell_integral, _segment_total, distortion,
                      restricted_distortion, triangle_measure)
from .results import SolveReport

STATIONARITY_TARGET = 1e-7
RESTARTS = 5
RESTART_SEED = 8675309

HEXAGON = make_polygon(6)
SIDE_WEIGHT = 1.0 / 6.0  # hexagon sides have unit length and density 1/6

# ---------------------------------------------------------------- short diagonal

ZONE_LEFT = (-SQRT3 / 2, -1 / (2 * SQRT3))
ZONE_RIGHT = (1 / (2 * SQRT3), SQRT3 / 2)
SIDE_GI = Segment(TRIANGLE_I, TRIANGLE_G, "GI")  # t = 0 at I, t = 1 at G
Q_DENSITY = 0.5


@dataclass(frozen=True)
class TriangleQSolution:
    """Optimal ``m`` points for the triangle measure, ``G``, ``H``, ``I`` included.

    ``left_coords`` start at ``G`` (x = -sqrt(3)/2) and increase;
    ``right_coords`` increase and end at ``H``.  ``breakpoints`` are the
    parameters on ``GI`` (0 at ``I``) where consecutive left cells meet,
    the last one being the boundary with ``I``'s cell.
    """

    m: int
    left_coords: np.ndarray
    right_coords: np.ndarray
    breakpoints: np.ndarray
    value: float
    left_value: float
    right_value: float
    stationarity_residual: float = 0.0

    @property
    def points(self) -> np.ndarray:
        xs = np.r_[self.left_coords, self.right_coords]
        return np.vstack([np.column_stack([xs, np.zeros_like(xs)]), TRIANGLE_I])

    @property
    def free_points(self) -> np.ndarray:
        xs = np.r_[self.left_coords[1:], self.right_coords[:-1]]
        return np.column_stack([xs, np.zeros_like(xs)])

    def quantizer(self) -> QuantizerSet:
        return QuantizerSet.from_parts([TRIANGLE_G, TRIANGLE_H, TRIANGLE_I], self.free_points)


def triangle_breakpoints(a) -> np.ndarray:
    """Parameters on ``GI`` of the cell boundaries of sites ``(a_j, 0)`` and ``I``.

    Consecutive sites meet at ``-(a_j + a_{j+1}) / sqrt(3)``; the last site and
    ``I`` meet at ``(4 a^2 + 1) / (2 - 4 sqrt(3) a)``.
    """
    a = np.asarray(a, dtype=float)
    d = -(a[:-1] + a[1:]) / SQRT3
    last = (4 * a[-1] ** 2 + 1) / (2 - 4 * SQRT3 * a[-1])
    return np.r_[d, last]


def triangle_group_value(a) -> float:
    """Error on ``GI`` from the sites ``(a_j, 0)`` (G first) and ``I``.

    Uses the explicit breakpoints of :func:`triangle_breakpoints`, valid while
    the sites stay in the left zone.
    """
    a = np.asarray(a, dtype=float)
    d = triangle_breakpoints(a)
    # cells in decreasing t: site j owns [d_j, d_{j-1}] with d_0 = 1, I owns [0, d_last]
    upper = np.r_[1.0, d[:-1]]
    p, u = SIDE_GI.p, SIDE_GI.direction
    parts = [_cell_integral(p, u, lo, hi, np.array([aj, 0.0])) for aj, lo, hi in zip(a, d, upper)]
    parts.append(_cell_integral(p, u, 0.0, d[-1], TRIANGLE_I))
    return Q_DENSITY * math.fsum(parts)


def triangle_group_value_direct(a) -> float:
    """Same quantity as :func:`triangle_group_value` through the generic Voronoi routine."""
    sites = np.vstack([np.column_stack([a, np.zeros(len(a))]), TRIANGLE_I])
    return _segment_total(SIDE_GI, sites, Q_DENSITY)


@lru_cache(maxsize=None)
def _triangle_group(n1: int):
    """Best left group of ``n1`` sites (``G`` included) on ``GI``."""
    lo, hi = ZONE_LEFT
    if n1 == 1:
        a = np.array([lo])
        return a, triangle_group_value(a), 0.0
    free = n1 - 1

    def unfold(x):
        return np.r_[lo, ordered_in_interval(x, lo, hi)]

    rng = np.random.default_rng(RESTART_SEED + n1)
    starts = [np.zeros(free)] + [rng.normal(scale=0.3, size=free) for _ in range(RESTARTS)]
    best, _ = multistart(lambda x: triangle_group_value(unfold(x)), starts)
    a = unfold(best.x)
    residual = float(np.max(np.abs(central_gradient(lambda y: triangle_group_value(np.r_[lo, y]), a[1:]))))
    if residual >= STATIONARITY_TARGET:
        raise SolverFailure(f"triangle group with {n1} sites did not converge",
                            dict(coords=a.tolist(), value=best.fun, residual=residual))
    return a, triangle_group_value(a), residual


def group_split(m: int) -> tuple[int, int]:
    """Sizes ``(n1, n2)`` of the left and right groups, extra site on the left."""
    n1 = math.ceil((m - 1) / 2)
    return n1, m - 1 - n1


def triangle_q_solve(m: int) -> TriangleQSolution:
    """Optimal set of ``m`` points for the triangle measure and its error ``V_m(Q)``."""
    if m < 3:
        raise TooFewPoints("the triangle problem needs at least G, H and I")
    n1, n2 = group_split(m)
    left, lv, lr = _triangle_group(n1)
    right_mirror, rv, rr = _triangle_group(n2)
    right = -right_mirror[::-1]
    for arr in (left, right):
        arr.setflags(write=False)
    return TriangleQSolution(m, left, right, triangle_breakpoints(left), lv + rv, lv, rv, max(lr, rr))


def pullback(points) -> np.ndarray:
    """Map triangle points back onto the hexagon with ``U^{-1}``."""
    return isometry_u().inverse()(points)


def short_diagonal_optimal_set(n: int):
    """Conditional optimal set with free points on the diagonal ``A6A4``.

    Returns ``(quantizer, V_n, report)``.
    """
    if n < 6:
        raise TooFewPoints(f"n={n} is smaller than the 6 prescribed vertices")
    sol = triangle_q_solve(n - 3)
    q = QuantizerSet.from_parts(HEXAGON.vertices, pullback(sol.free_points))
    value = sol.value / 3 + 1 / 18
    report = SolveReport(Constraint.DIAG_SHORT, 6, n, q, value, distortion(q, HEXAGON).total,
                         stationarity_residual=sol.stationarity_residual,
                         allocation=group_split(n - 3), expression="V_{n-3}(Q)/3 + 1/18",
                         groups={"triangle": sol})
    return q, value, report


# ----------------------------------------------------------------- long diagonal

LONG_CAP_X = 3.5 - 2 * SQRT3
LONG_ZONE = (-0.5, (1 - SQRT3) / 2)
LONG_FOOT = np.array([(1 - SQRT3) / 2, SQRT3 * (1 - SQRT3) / 2])
LONG_VERTEX_CONSTANT = 13 / 36 * (48 * SQRT3 - 83)
SIDE_L1 = HEXAGON.side(1)


@dataclass(frozen=True)
class LongDiagonalGroup:
    """Diagonal points ``(a_i, sqrt(3) a_i)`` serving ``L1`` and ``L6``; ``a_1 = -1/2`` is ``A1``."""

    q: int
    coords: np.ndarray
    value: float

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.coords, SQRT3 * self.coords])


def long_diagonal_breakpoints(a) -> np.ndarray:
    """Abscissae on ``L1`` where cells of consecutive diagonal sites meet."""
    a = np.asarray(a, dtype=float)
    return 2 * (a[:-1] + a[1:]) + 1.5


def capped_group_value(a) -> float:
    """Error on ``L1`` of the diagonal sites ``a`` with the last cell ending at ``7/2 - 2 sqrt(3)``."""
    a = np.asarray(a, dtype=float)
    xs = np.r_[-0.5, long_diagonal_breakpoints(a), LONG_CAP_X]
    p, u = SIDE_L1.p, SIDE_L1.direction
    parts = [_cell_integral(p, u, x0 + 0.5, x1 + 0.5, np.array([ai, SQRT3 * ai]))
             for ai, x0, x1 in zip(a, xs[:-1], xs[1:])]
    return SIDE_WEIGHT * math.fsum(parts)


def long_diagonal_group(q: int) -> LongDiagonalGroup:
    """Closed-form group of ``q`` equally spaced points with its error on ``L1``."""
    if q < 1:
        raise InvalidArgument("q must be >= 1")
    i = np.arange(1, q + 1)
    coords = (i - 1) * (2 - SQRT3) / (2 * q - 1) - 0.5
    coords.setflags(write=False)
    if q == 1:
        # A1 alone, over the half of L1 it owns among the vertices
        return LongDiagonalGroup(1, coords, 1 / 144)
    value = 4 * (26 - 15 * SQRT3) * (3 * (q - 1) * q + 1) / (9 * (1 - 2 * q) ** 2)
    return LongDiagonalGroup(q, coords, value)


def long_diagonal_vertex_constant_direct() -> float:
    """Error of the cells of ``A2, A3, A5, A6`` when the diagonal groups are present.

    The foot of the perpendicular from the cap point onto the diagonal, and its
    mirror image, stand in for the diagonal groups: they produce the same cell
    boundaries for the four vertices.
    """
    q = QuantizerSet.from_parts(HEXAGON.vertices, [LONG_FOOT, -LONG_FOOT])
    owners = [1, 2, 4, 5]  # A2, A3, A5, A6
    return restricted_distortion(q, HEXAGON, owners=owners)


def _exact_group_value(a) -> float:
    """True error on ``L1`` with sites ``A1``, diagonal points ``a[1:]`` and ``A2``."""
    pts = np.column_stack([a, SQRT3 * np.asarray(a)])
    return _segment_total(SIDE_L1, np.vstack([pts, HEXAGON.vertex(2)]), SIDE_WEIGHT)


@lru_cache(maxsize=None)
def exact_long_group(q: int) -> tuple[LongDiagonalGroup, float]:
    """Group of ``q`` points (``A1`` included) minimising the true error on ``L1``.

    Returns the group and the stationarity residual.
    """
    if q < 1:
        raise InvalidArgument("q must be >= 1")
    lo, hi = LONG_ZONE
    if q == 1:
        a = np.array([lo])
        return LongDiagonalGroup(1, a, _exact_group_value(a)), 0.0

    def unfold(x):
        return np.r_[lo, ordered_in_interval(x, lo, hi)]

    rng = np.random.default_rng(RESTART_SEED + 31 * q)
    starts = [np.zeros(q - 1)] + [rng.normal(scale=0.3, size=q - 1) for _ in range(RESTARTS)]
    best, _ = multistart(lambda x: _exact_group_value(unfold(x)), starts)
    a = unfold(best.x)
    residual = float(np.max(np.abs(central_gradient(lambda y: _exact_group_value(np.r_[lo, y]), a[1:]))))
    if residual >= STATIONARITY_TARGET:
        raise SolverFailure(f"long-diagonal group with {q} points did not converge",
                            dict(coords=a.tolist(), value=best.fun, residual=residual))
    a.setflags(write=False)
    return LongDiagonalGroup(q, a, _exact_group_value(a)), residual


def long_diagonal_split(n: int) -> tuple[int, int]:
    q = math.ceil((n - 4) / 2)
    return q, n - 4 - q


def long_diagonal_optimal_set(n: int, method: str = "closed_form"):
    """Conditional optimal set with free points on the diagonal ``A1A4``.

    ``method="closed_form"`` uses the equally spaced groups and the explicit
    error formula.  ``method="exact"`` minimises the true error of each group;
    its ``V_n`` is the exact distortion of the returned set.  The report's
    ``direct_value`` is always the exact distortion of the returned points.
    """
    if n < 6:
        raise TooFewPoints(f"n={n} is smaller than the 6 prescribed vertices")
    if method not in ("closed_form", "exact"):
        raise InvalidArgument(f"unknown method {method!r}")
    if n == 6:
        q = QuantizerSet.from_parts(HEXAGON.vertices)
        report = SolveReport(Constraint.DIAG_LONG, 6, 6, q, 1 / 12, distortion(q, HEXAGON).total,
                             allocation=(1, 1), expression="1/12")
        return q, 1 / 12, report
    nl, nr = long_diagonal_split(n)
    if method == "closed_form":
        left, right = long_diagonal_group(nl), long_diagonal_group(nr)
        value = LONG_VERTEX_CONSTANT + 2 * (left.value + right.value)
        residual = 0.0
        expr = f"13/36 (48 sqrt(3) - 83) + 2 (V({nl}) + V({nr}))"
    else:
        (left, r1), (right, r2) = exact_long_group(nl), exact_long_group(nr)
        value = 2 / 72 + 2 * (left.value + right.value)
        residual = max(r1, r2)
        expr = f"1/36 + 2 (W({nl}) + W({nr}))"
    free = np.vstack([left.points[1:], REFLECTION_F(right.points[1:])])
    q = QuantizerSet.from_parts(HEXAGON.vertices, free)
    report = SolveReport(Constraint.DIAG_LONG, 6, n, q, value, distortion(q, HEXAGON).total,
                         stationarity_residual=residual, allocation=(nl, nr), expression=expr,
                         groups={"left": left, "right": right})
    return q, value, report
