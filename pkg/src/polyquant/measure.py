"""Uniform measures on unions of segments and exact distortion integrals.

Every support we integrate over is a finite union of straight segments and the
integrand ``min_a |x - a|^2`` restricted to a segment is piecewise quadratic in
the segment parameter, so distortions are computed exactly: the 1-D Voronoi
partition of each segment is found from the pairwise bisector crossings and
each cell is integrated in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateBisector, InvalidArgument, InvalidInterval
from .geometry import SQRT3, RegularPolygon, RigidMap, Segment

# mass carried by one unit of side parameter t, as a multiple of the side length / k
CONVENTIONS = ("arclength", "probability", "parameter")

BREAKPOINT_DEDUP = 1e-12


def side_weight(k: int, convention: str = "arclength") -> float:
    """Mass per unit of side parameter ``t`` on one side of the k-gon.

    ``arclength``   density 1/k per unit arclength (total mass 2 sin(pi/k)),
    ``probability`` density normalised to total mass 1,
    ``parameter``   unit mass per unit ``t`` on every side (total mass k).

    The three differ by a factor depending only on ``k``; they coincide with a
    probability measure when ``k = 6``.
    """
    if convention == "arclength":
        return 2.0 * math.sin(math.pi / k) / k
    if convention == "probability":
        return 1.0 / k
    if convention == "parameter":
        return 1.0
    raise InvalidArgument(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def convert(value: float, k: int, source: str = "arclength", target: str = "parameter") -> float:
    """Rescale a distortion of the k-gon measure between conventions."""
    return value * side_weight(k, target) / side_weight(k, source)


def rho(p, q) -> float:
    """Squared Euclidean distance."""
    d = np.asarray(p, float) - np.asarray(q, float)
    return float(d @ d)


@dataclass(frozen=True)
class UniformMeasure:
    """Constant arclength ``density`` on a union of labelled segments."""

    segments: tuple[Segment, ...]
    density: float

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.density > 0:
            raise InvalidArgument("density must be positive")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.segments)

    @property
    def mass(self) -> float:
        return math.fsum(self.density * s.length for s in self.segments)

    def select(self, which) -> "UniformMeasure":
        """Restriction to segments chosen by label or position."""
        keep = []
        for w in which:
            if isinstance(w, str):
                try:
                    keep.append(self.segments[self.labels.index(w)])
                except ValueError:
                    raise InvalidArgument(f"no segment labelled {w!r}") from None
            else:
                keep.append(self.segments[w])
        return UniformMeasure(tuple(keep), self.density)

    def transformed(self, g: RigidMap) -> "UniformMeasure":
        return UniformMeasure(tuple(Segment(g(s.p), g(s.q), s.label) for s in self.segments), self.density)


def boundary_measure(polygon: RegularPolygon, convention: str = "arclength") -> UniformMeasure:
    """Uniform measure on the boundary of ``polygon`` under ``convention``."""
    return UniformMeasure(polygon.sides, side_weight(polygon.k, convention) / polygon.side_length)


# Triangle GHI used for the short-diagonal reduction: G and H on the x-axis, I above.
TRIANGLE_G = np.array([-SQRT3 / 2, 0.0])
TRIANGLE_H = np.array([SQRT3 / 2, 0.0])
TRIANGLE_I = np.array([0.0, 0.5])


def triangle_measure() -> UniformMeasure:
    """Uniform measure with density 1/2 on the two unit sides GI and HI."""
    return UniformMeasure((Segment(TRIANGLE_I, TRIANGLE_G, "GI"), Segment(TRIANGLE_H, TRIANGLE_I, "HI")), 0.5)


@dataclass(frozen=True)
class QuantizerSet:
    """Planar point set; ``conditional[i]`` marks points of the prescribed set."""

    points: np.ndarray
    conditional: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 2)
        flags = np.array(self.conditional, dtype=bool).reshape(-1)
        if len(flags) != len(pts):
            raise InvalidArgument("one conditional flag per point is required")
        if len(pts) > 1:
            d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
            d2[np.diag_indices(len(pts))] = np.inf
            if d2.min() <= 1e-18:
                raise InvalidArgument("quantizer contains duplicate points")
        pts.setflags(write=False)
        flags.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "conditional", flags)

    @classmethod
    def from_parts(cls, conditional_points, free_points=()) -> "QuantizerSet":
        c = np.asarray(conditional_points, float).reshape(-1, 2)
        f = np.asarray(free_points, float).reshape(-1, 2)
        return cls(np.vstack([c, f]), np.r_[np.ones(len(c), bool), np.zeros(len(f), bool)])

    def __len__(self):
        return len(self.points)

    @property
    def free(self) -> np.ndarray:
        return self.points[~self.conditional]

    @property
    def fixed(self) -> np.ndarray:
        return self.points[self.conditional]

    def transformed(self, g: RigidMap) -> "QuantizerSet":
        return QuantizerSet(g(self.points), self.conditional)


@dataclass(frozen=True)
class DistortionBreakdown:
    per_segment: tuple[tuple[str, float], ...]
    total: float

    def __float__(self):
        return self.total


class Bisection(NamedTuple):
    """Where the bisector of two sites crosses a segment.

    ``t`` is the crossing parameter, or None when the bisector misses the
    segment; ``nearer`` is 0 or 1 for the site that wins just below ``t``
    (everywhere on the segment when ``t`` is None).
    """

    t: float | None
    nearer: int


def _as_points(quantizer) -> np.ndarray:
    if isinstance(quantizer, QuantizerSet):
        return quantizer.points
    pts = np.asarray(quantizer, dtype=float).reshape(-1, 2)
    return pts


def segment_distortion_exact(seg: Segment, t0: float, t1: float, site, density: float = 1.0,
                             arclength_scale: float = 1.0) -> float:
    """``density * arclength_scale * integral_{t0}^{t1} |seg(t) - site|^2 dt``."""
    if t0 > t1:
        raise InvalidInterval(f"t0={t0} > t1={t1}")
    return density * arclength_scale * _cell_integral(seg.p, seg.direction, t0, t1, np.asarray(site, float))


def _cell_integral(p, d, t0, t1, s) -> float:
    # expand about the cell midpoint: 2h |e|^2 + (2/3) h^3 |d|^2, no cancellation
    h = 0.5 * (t1 - t0)
    e = p + 0.5 * (t0 + t1) * d - s
    return float(2.0 * h * (e @ e) + (2.0 / 3.0) * h ** 3 * (d @ d))


def voronoi_breakpoint_on_segment(seg: Segment, site_a, site_b) -> Bisection:
    """Solve ``rho(seg(t), a) = rho(seg(t), b)`` for ``t`` in [0, 1].

    The difference of the two squared distances is affine in ``t``, so there is
    at most one crossing.
    """
    a = np.asarray(site_a, float)
    b = np.asarray(site_b, float)
    diff = a - b
    if diff @ diff <= 1e-300:
        raise DegenerateBisector("coincident sites")
    p, d = seg.p, seg.direction
    # rho(x, a) - rho(x, b) = c - 2 t d.(a - b)
    c = a @ a - b @ b - 2.0 * (p @ diff)
    slope = -2.0 * (d @ diff)
    if slope != 0.0:
        t = -c / slope
        if 0.0 < t < 1.0:
            return Bisection(float(t), 0 if slope > 0 else 1)
    g_mid = c + 0.5 * slope
    return Bisection(None, 0 if g_mid <= 0 else 1)


def voronoi_cells(seg: Segment, sites) -> list[tuple[float, float, int]]:
    """Partition [0, 1] into maximal cells ``(t0, t1, owner)`` of nearest sites.

    Candidate breakpoints are all pairwise bisector crossings; the owner of each
    elementary cell is the site nearest its midpoint, lowest index on ties.
    """
    S = _as_points(sites)
    if len(S) == 0:
        raise InvalidArgument("empty quantizer")
    p, d = seg.p, seg.direction
    ts = [0.0, 1.0]
    if len(S) > 1:
        i, j = np.triu_indices(len(S), 1)
        diff = S[i] - S[j]
        c = (S[i] ** 2).sum(1) - (S[j] ** 2).sum(1) - 2.0 * diff @ p
        slope = 2.0 * diff @ d
        nz = slope != 0.0
        roots = c[nz] / slope[nz]
        ts.extend(roots[(roots > 0.0) & (roots < 1.0)].tolist())
    ts = np.sort(np.asarray(ts))
    keep = np.r_[True, np.diff(ts) > BREAKPOINT_DEDUP]
    ts = ts[keep]
    ts[-1] = 1.0
    mids = 0.5 * (ts[:-1] + ts[1:])
    x = p + mids[:, None] * d
    owner = np.argmin(((x[:, None, :] - S[None, :, :]) ** 2).sum(-1), axis=1)
    cells = []
    for a, b, o in zip(ts[:-1], ts[1:], owner):
        if cells and cells[-1][2] == o:
            cells[-1] = (cells[-1][0], float(b), int(o))
        else:
            cells.append((float(a), float(b), int(o)))
    return cells


def _segment_total(seg: Segment, S: np.ndarray, weight: float, owners=None) -> float:
    parts = []
    for t0, t1, o in voronoi_cells(seg, S):
        if owners is None or o in owners:
            parts.append(_cell_integral(seg.p, seg.direction, t0, t1, S[o]))
    return weight * math.fsum(parts)


def _support_measure(support, convention: str) -> UniformMeasure:
    if isinstance(support, UniformMeasure):
        return support
    if isinstance(support, RegularPolygon):
        return boundary_measure(support, convention)
    raise InvalidArgument("support must be a RegularPolygon or a UniformMeasure")


def distortion(quantizer, support, convention: str = "arclength") -> DistortionBreakdown:
    """Exact distortion ``integral min_a rho(x, a) dmu(x)`` with per-segment contributions.

    ``support`` is either a polygon (its boundary measure under ``convention``)
    or an explicit :class:`UniformMeasure`.
    """
    mu = _support_measure(support, convention)
    S = _as_points(quantizer)
    if len(S) == 0:
        raise InvalidArgument("empty quantizer")
    per = tuple((seg.label, _segment_total(seg, S, mu.density * seg.length)) for seg in mu.segments)
    return DistortionBreakdown(per, math.fsum(v for _, v in per))


def restricted_distortion(quantizer, support, segments: Sequence | None = None, owners: Sequence[int] | None = None,
                          convention: str = "arclength") -> float:
    """Distortion over a subset of the support, counting only some Voronoi cells.

    Nearest sites are always taken over the full ``quantizer``.  ``segments``
    selects support segments by label or position (all when None) and
    ``owners`` lists the point indices whose cells are counted (all when None).
    """
    mu = _support_measure(support, convention)
    if segments is not None:
        mu = mu.select(segments)
    S = _as_points(quantizer)
    if len(S) == 0:
        raise InvalidArgument("empty quantizer")
    own = None if owners is None else set(int(o) for o in owners)
    return math.fsum(_segment_total(seg, S, mu.density * seg.length, own) for seg in mu.segments)
