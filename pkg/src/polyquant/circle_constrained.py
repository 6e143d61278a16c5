"""Conditional optimal sets with the free points on the circumcircle or the incircle.

Free points over side ``L_1`` live on the arc ``S_1`` of the constraint circle
that subtends ``L_1``; their cells only meet ``L_1``, so the problem splits
into one small group problem per side.  A group is solved for its angles by
Nelder-Mead on the left half of the arc, mirroring the rest about the
downward vertical (the optimum is symmetric), and the full set is assembled by
rotating group solutions onto the other sides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._optimize import central_gradient, multistart, ordered_in_interval
from .errors import DegenerateBisector, InvalidArgument, SolverFailure, TooFewPoints
from .geometry import SQRT3, Constraint, arc_span, make_polygon, rotation_map
from .measure import (QuantizerSet, _segment_total, distortion, side_weight, voronoi_breakpoint_on_segment,
                      voronoi_cells)
from .results import SolveReport

STATIONARITY_TARGET = 1e-7
RESTARTS = 5
RESTART_SEED = 20240601


@dataclass(frozen=True)
class ArcGroupSolution:
    """Optimal placement of the points of one side group.

    ``angles`` and ``sites`` are the points on the constraint arc (for the
    circumcircle they include the two vertices).  ``breakpoints`` are the
    x-coordinates on the bottom side where consecutive cells of the group meet.
    """

    k: int
    constraint: Constraint
    angles: np.ndarray
    sites: np.ndarray
    breakpoints: np.ndarray
    group_distortion: float
    stationarity_residual: float

    @property
    def free_sites(self) -> np.ndarray:
        if self.constraint is Constraint.CIRCUMCIRCLE:
            return self.sites[1:-1]
        return self.sites


def circumcircle_breakpoints(theta, k: int = 6) -> np.ndarray:
    """x-coordinates where cells of consecutive unit-circle sites meet the bottom side.

    For the hexagon this is the explicit solution of the equal-distance
    equations on ``y = -sqrt(3)/2``; other ``k`` go through the generic
    bisector routine.
    """
    theta = np.asarray(theta, dtype=float)
    if k == 6:
        s0, s1 = np.sin(theta[:-1]), np.sin(theta[1:])
        c0, c1 = np.cos(theta[:-1]), np.cos(theta[1:])
        den = 2 * c1 - 2 * c0
        if np.any(den == 0):
            raise DegenerateBisector("two sites share an x-coordinate")
        return (-s0 ** 2 + s1 ** 2 - SQRT3 * s0 + SQRT3 * s1 - c0 ** 2 + c1 ** 2) / den
    return _generic_breakpoints(k, np.column_stack([np.cos(theta), np.sin(theta)]))


def _generic_breakpoints(k: int, sites) -> np.ndarray:
    side = make_polygon(k).side(1)
    out = []
    for a, b in zip(sites[:-1], sites[1:]):
        if math.isclose(a[0], b[0], rel_tol=0, abs_tol=1e-15):
            raise DegenerateBisector("two sites share an x-coordinate")
        hit = voronoi_breakpoint_on_segment(side, a, b)
        t = hit.t
        if t is None:
            # crossing outside the side: extend the side's line to report it anyway
            d = side.direction
            diff = a - b
            t = (a @ a - b @ b - 2 * side.p @ diff) / (2 * d @ diff)
        out.append(side.p[0] + t * side.direction[0])
    return np.asarray(out)


class _Group:
    """Objective for ``count`` free points on the arc over the bottom side."""

    def __init__(self, k: int, radius: float, count: int):
        self.k, self.radius, self.count = k, radius, count
        polygon = make_polygon(k)
        self.side = polygon.side(1)
        self.weight = side_weight(k)
        self.ends = np.array([polygon.vertex(1), polygon.vertex(2)])
        self.lo, self.hi = arc_span(k, 1)
        self.mid = 1.5 * math.pi
        self.folded_dim = count // 2

    def unfold(self, x) -> np.ndarray:
        half = ordered_in_interval(x, self.lo, self.mid)
        centre = [self.mid] if self.count % 2 else []
        return np.r_[half, centre, (2 * self.mid - half)[::-1]]

    def sites(self, angles) -> np.ndarray:
        arc = self.radius * np.column_stack([np.cos(angles), np.sin(angles)])
        return np.vstack([self.ends[0], arc, self.ends[1]])

    def value(self, angles) -> float:
        return _segment_total(self.side, self.sites(np.asarray(angles, float)), self.weight)

    def folded_value(self, x) -> float:
        return self.value(self.unfold(x))

    def solve(self):
        if self.count == 0:
            angles = np.empty(0)
            return angles, self.value(angles), 0.0
        if self.folded_dim == 0:
            angles = self.unfold(np.empty(0))
        else:
            rng = np.random.default_rng(RESTART_SEED + 97 * self.k + self.count)
            starts = [np.zeros(self.folded_dim)]
            starts += [rng.normal(scale=0.3, size=self.folded_dim) for _ in range(RESTARTS)]
            best, _ = multistart(self.folded_value, starts)
            angles = self.unfold(best.x)
        residual = float(np.max(np.abs(central_gradient(self.value, angles))))
        return angles, self.value(angles), residual


def _finish(group: _Group, constraint: Constraint, angles, value, residual) -> ArcGroupSolution:
    if residual >= STATIONARITY_TARGET:
        raise SolverFailure(f"{constraint.value} group with {group.count} free points did not converge",
                            dict(k=group.k, angles=angles.tolist(), value=value, residual=residual))
    sites = group.sites(angles)
    cells = voronoi_cells(group.side, sites)
    bps = np.array([group.side.point(t1)[0] for _, t1, _ in cells[:-1]])
    if constraint is Constraint.CIRCUMCIRCLE:
        lo, hi = arc_span(group.k, 1)
        angles, arc_sites = np.r_[lo, angles, hi], sites
    else:
        arc_sites = sites[1:-1]
    angles.setflags(write=False)
    return ArcGroupSolution(group.k, constraint, angles, arc_sites, bps, value, residual)


@lru_cache(maxsize=None)
def circumcircle_group_solve(k: int, ell: int) -> ArcGroupSolution:
    """Best ``ell`` points on arc ``S_1`` of the unit circle, both vertices included."""
    if ell < 2:
        raise InvalidArgument("a circumcircle group contains its two vertices")
    group = _Group(k, 1.0, ell - 2)
    return _finish(group, Constraint.CIRCUMCIRCLE, *group.solve())


@lru_cache(maxsize=None)
def incircle_group_solve(k: int, ell: int) -> ArcGroupSolution:
    """Best ``ell`` points strictly inside the incircle arc over the bottom side.

    The vertices A1 and A2 are the group's fixed neighbours; a single point
    sits at the tangency point (the side's midpoint).
    """
    if ell < 0:
        raise InvalidArgument("ell must be >= 0")
    group = _Group(k, math.cos(math.pi / k), ell)
    return _finish(group, Constraint.INCIRCLE, *group.solve())


def balanced_counts(k: int, free: int) -> tuple[int, ...]:
    """Free points per side group, extras on the lowest-numbered sides."""
    q, r = divmod(free, k)
    return tuple(q + 1 if i < r else q for i in range(k))


def _optimal_set(k: int, n: int, constraint: Constraint, group_solve, counts=None):
    if k < 3:
        raise InvalidArgument("k must be >= 3")
    if n < k:
        raise TooFewPoints(f"n={n} is smaller than the {k} prescribed vertices")
    counts = balanced_counts(k, n - k) if counts is None else tuple(counts)
    if len(counts) != k or min(counts) < 0 or sum(counts) != n - k:
        raise InvalidArgument(f"group counts {counts} do not add {n - k} points over {k} sides")
    offset = 2 if constraint is Constraint.CIRCUMCIRCLE else 0
    groups = {c: group_solve(k, c + offset) for c in sorted(set(counts))}
    rot = rotation_map(k)
    free = [rot.power(i)(groups[c].free_sites) for i, c in enumerate(counts)]
    polygon = make_polygon(k)
    q = QuantizerSet.from_parts(polygon.vertices, np.vstack(free))
    value = math.fsum(groups[c].group_distortion for c in counts)
    report = SolveReport(constraint, k, n, q, value, distortion(q, polygon).total,
                         stationarity_residual=max(g.stationarity_residual for g in groups.values()),
                         allocation=tuple(c + 2 for c in counts), groups=groups)
    return q, value, report


def circumcircle_optimal_set(k: int, n: int, counts=None):
    """Conditional optimal set with free points on the circumcircle.

    ``counts`` optionally fixes the number of free points over each side.
    Returns ``(quantizer, V_n, report)``.
    """
    return _optimal_set(k, n, Constraint.CIRCUMCIRCLE, circumcircle_group_solve, counts)


def incircle_optimal_set(k: int, n: int, counts=None):
    """Conditional optimal set with free points on the incircle."""
    return _optimal_set(k, n, Constraint.INCIRCLE, incircle_group_solve, counts)
