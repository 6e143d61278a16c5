"""Regular k-gons inscribed in the unit circle and the rigid maps acting on them.

Vertices are numbered from 1, so ``polygon.vertex(1)`` is the left end of the
bottom (horizontal) side.  Points are plain ``numpy`` arrays of shape ``(2,)``
and point sets are arrays of shape ``(m, 2)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidArgument, UnsupportedConstraint

SQRT3 = math.sqrt(3.0)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class Constraint(str, enum.Enum):
    """Where the free (non-conditional) quantizer points may live."""

    NONE = "none"
    CIRCUMCIRCLE = "circumcircle"
    INCIRCLE = "incircle"
    DIAG_SHORT = "diag-short"
    DIAG_LONG = "diag-long"

    @property
    def is_diagonal(self) -> bool:
        return self in (Constraint.DIAG_SHORT, Constraint.DIAG_LONG)

    def check(self, k: int) -> None:
        if self.is_diagonal and k != 6:
            raise UnsupportedConstraint(f"{self.value} is only defined for the hexagon, got k={k}")


@dataclass(frozen=True)
class Segment:
    """Straight segment ``t -> (1 - t) p + t q`` for ``t`` in [0, 1]."""

    p: np.ndarray
    q: np.ndarray
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "p", _frozen(self.p))
        object.__setattr__(self, "q", _frozen(self.q))
        if not self.length > 0:
            raise InvalidArgument("segment endpoints coincide")

    @property
    def direction(self) -> np.ndarray:
        return self.q - self.p

    @property
    def length(self) -> float:
        return float(math.hypot(*(self.q - self.p)))

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return self.p + t[..., None] * self.direction if t.ndim else self.p + float(t) * self.direction

    def sub(self, t0: float, t1: float, label: str | None = None) -> "Segment":
        """The piece of this segment between parameters ``t0`` and ``t1``."""
        return Segment(self.point(t0), self.point(t1), self.label if label is None else label)

    def parameter_of(self, x) -> float:
        """Parameter of the orthogonal projection of ``x`` onto the segment's line."""
        d = self.direction
        return float(np.dot(np.asarray(x, float) - self.p, d) / np.dot(d, d))


@dataclass(frozen=True)
class CircularArc:
    """Arc of the origin-centred circle of ``radius`` for angles in [theta0, theta1]."""

    radius: float
    theta0: float
    theta1: float
    label: str = ""

    def point(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.radius * np.stack([np.cos(theta), np.sin(theta)], axis=-1)

    @property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        return self.point(self.theta0), self.point(self.theta1)


@dataclass(frozen=True)
class RigidMap:
    """Affine isometry ``x -> matrix @ x + translation``."""

    matrix: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.shape != (2, 2):
            raise InvalidArgument("matrix must be 2x2")
        if not np.allclose(m.T @ m, np.eye(2), rtol=0, atol=1e-14):
            raise InvalidArgument("matrix is not orthogonal")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", _frozen(self.translation))

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        return pts @ self.matrix.T + self.translation

    def __matmul__(self, other: "RigidMap") -> "RigidMap":
        """Composition: ``(self @ other)(x) == self(other(x))``."""
        return RigidMap(self.matrix @ other.matrix, self.matrix @ other.translation + self.translation)

    def inverse(self) -> "RigidMap":
        m = self.matrix.T
        return RigidMap(m, -(m @ self.translation))

    def power(self, j: int) -> "RigidMap":
        if j < 0:
            return self.inverse().power(-j)
        out = IDENTITY
        for _ in range(j):
            out = self @ out
        return out


IDENTITY = RigidMap(np.eye(2))


@dataclass(frozen=True)
class RegularPolygon:
    """Regular k-gon inscribed in the unit circle with side A1A2 horizontal and lowest."""

    k: int
    vertices: np.ndarray = field(repr=False)

    @property
    def side_length(self) -> float:
        return 2.0 * math.sin(math.pi / self.k)

    @property
    def apothem(self) -> float:
        return math.cos(math.pi / self.k)

    def vertex(self, j: int) -> np.ndarray:
        """Vertex ``A_j``; indices wrap, so ``vertex(k + 1) == vertex(1)``."""
        return self.vertices[(j - 1) % self.k]

    def side(self, j: int) -> Segment:
        """Side ``L_j`` from ``A_j`` to ``A_{j+1}``."""
        j = (j - 1) % self.k + 1
        return Segment(self.vertex(j), self.vertex(j + 1), f"L{j}")

    @cached_property
    def sides(self) -> tuple[Segment, ...]:
        return tuple(self.side(j) for j in range(1, self.k + 1))

    def arc(self, j: int, radius: float = 1.0) -> CircularArc:
        """Arc over side ``L_j`` subtending the same central angle ``2 pi / k``."""
        lo, hi = arc_span(self.k, j)
        return CircularArc(radius, lo, hi, f"S{(j - 1) % self.k + 1}")


def make_polygon(k: int) -> RegularPolygon:
    if int(k) != k or k < 3:
        raise InvalidArgument(f"a polygon needs k >= 3 sides, got {k}")
    k = int(k)
    ang = np.pi * (2 * np.arange(1, k + 1) - 3) / k
    return RegularPolygon(k, _frozen(np.column_stack([np.sin(ang), -np.cos(ang)])))


def arc_span(k: int, j: int = 1) -> tuple[float, float]:
    """Angular interval of arc ``S_j``: centred on the outward normal of ``L_j``."""
    j = (j - 1) % k + 1
    return (1.5 * math.pi + (2 * j - 3) * math.pi / k, 1.5 * math.pi + (2 * j - 1) * math.pi / k)


def rotation_map(k: int) -> RigidMap:
    """Rotation by ``2 pi / k``; sends ``A_j`` to ``A_{j+1}`` and ``L_j`` to ``L_{j+1}``."""
    if k < 3:
        raise InvalidArgument("k must be >= 3")
    c, s = math.cos(2 * math.pi / k), math.sin(2 * math.pi / k)
    return RigidMap(np.array([[c, -s], [s, c]]))


def isometry_u() -> RigidMap:
    """Hexagon map carrying triangle A6 A4 A5 onto G(-sqrt3/2, 0) H(sqrt3/2, 0) I(0, 1/2)."""
    h = SQRT3 / 2
    return RigidMap(np.array([[h, 0.5], [-0.5, h]]), np.array([0.0, -0.5]))


REFLECTION_F = RigidMap(-np.eye(2))


def reflection_f(p):
    """Point reflection through the origin."""
    return REFLECTION_F(p)


def diagonal(constraint: Constraint) -> Segment:
    """Canonical hexagon diagonal for a diagonal constraint.

    The short one runs from A6 to A4 and the long one from A1 to A4; every
    other diagonal is a rotation of one of these.
    """
    hexagon = make_polygon(6)
    if constraint is Constraint.DIAG_SHORT:
        return Segment(hexagon.vertex(6), hexagon.vertex(4), "A6A4")
    if constraint is Constraint.DIAG_LONG:
        return Segment(hexagon.vertex(1), hexagon.vertex(4), "A1A4")
    raise InvalidArgument(f"{constraint} is not a diagonal constraint")


def constraint_curve(polygon: RegularPolygon, constraint) -> list:
    """Pieces of the constraint set: arcs for circles, one segment for a diagonal."""
    constraint = Constraint(constraint)
    constraint.check(polygon.k)
    if constraint is Constraint.NONE:
        return []
    if constraint is Constraint.CIRCUMCIRCLE:
        return [polygon.arc(j) for j in range(1, polygon.k + 1)]
    if constraint is Constraint.INCIRCLE:
        return [polygon.arc(j, polygon.apothem) for j in range(1, polygon.k + 1)]
    return [diagonal(constraint)]


def dihedral_maps(k: int) -> list[RigidMap]:
    """The 2k symmetries of the k-gon (rotations, then reflections)."""
    rot = rotation_map(k)
    mirror = RigidMap(np.array([[-1.0, 0.0], [0.0, 1.0]]))  # fixes the bottom side's midpoint
    rots = [rot.power(j) for j in range(k)]
    return rots + [r @ mirror for r in rots]


def symmetries_fixing(constraint, k: int) -> list[RigidMap]:
    """Polygon symmetries that also map the constraint set onto itself."""
    constraint = Constraint(constraint)
    maps = dihedral_maps(k)
    if not constraint.is_diagonal:
        return maps
    seg = diagonal(constraint)
    keep = []
    for g in maps:
        ends = g(np.array([seg.p, seg.q]))
        if (np.allclose(ends, [seg.p, seg.q], atol=1e-12)
                or np.allclose(ends, [seg.q, seg.p], atol=1e-12)):
            keep.append(g)
    return keep
