"""Conditional optimal sets with no constraint on the free points.

With the vertices prescribed, an optimal set puts ``n_j`` equally spaced
points (endpoints included) on each side ``L_j`` with the counts as equal as
possible, so everything here is closed form.  For the triangle with a single
free point the centre beats every boundary placement and is returned instead.

The triangle has further exceptions: for ``n = 5, 7, 8`` a set with one point
strictly inside the triangle has a smaller error than any side placement
(:func:`polyquant.oracle.global_minimize` finds them).  :func:`optimal_set`
still returns the side placement there; use the oracle for those instances.
No such exception turns up for ``k >= 4``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, TooFewPoints
from .geometry import Constraint, make_polygon, rotation_map
from .measure import QuantizerSet, convert, distortion, side_weight
from .results import SolveReport

Allocation = tuple  # per-side counts n_j, endpoints included


def _check_n(k: int, n: int) -> None:
    if k < 3:
        raise InvalidArgument("k must be >= 3")
    if n < k:
        raise TooFewPoints(f"n={n} is smaller than the {k} prescribed vertices")


def balanced_allocations(k: int, n: int) -> list[Allocation]:
    """All side counts with ``sum(n_j - 1) = n`` and ``max - min <= 1``.

    The first entry gives the extra points to the lowest-numbered sides.
    """
    _check_n(k, n)
    q, r = divmod(n, k)
    out = []
    for extra in itertools.combinations(range(k), r):
        counts = [q + 1] * k
        for j in extra:
            counts[j] += 1
        out.append(tuple(counts))
    return out


def side_error(k: int, m: int, convention: str = "arclength") -> float:
    """Error on one side from ``m`` equally spaced points including both ends."""
    if m < 2:
        raise InvalidArgument("a side carries at least its two endpoints")
    value = 2.0 * math.sin(math.pi / k) ** 3 / (3.0 * k * (m - 1) ** 2)
    return convert(value, k, "arclength", convention)


def allocation_error(k: int, counts, convention: str = "arclength") -> float:
    return math.fsum(side_error(k, m, convention) for m in counts)


def side_points(k: int, m: int) -> np.ndarray:
    """``m`` equally spaced points on the bottom side, from A1 to A2."""
    if m < 2:
        raise InvalidArgument("m must be >= 2")
    j = np.arange(1, m + 1)
    s, c = math.sin(math.pi / k), math.cos(math.pi / k)
    return np.column_stack([(2 * j - m - 1) * s / (m - 1), np.full(m, -c)])


def assemble(k: int, counts) -> QuantizerSet:
    """Vertices plus the interior points of each side for the given counts."""
    polygon = make_polygon(k)
    rot = rotation_map(k)
    free = [rot.power(j)(side_points(k, m)[1:-1]) for j, m in enumerate(counts)]
    return QuantizerSet.from_parts(polygon.vertices, np.vstack(free) if free else np.empty((0, 2)))


def optimal_set(k: int, n: int, allocation=None, convention: str = "arclength"):
    """Canonical conditional optimal set of ``n`` points and its error.

    Returns ``(quantizer, V_n, report)``.  ``allocation`` picks one of the
    equally good balanced count vectors; by default extra points go to the
    lowest-numbered sides.
    """
    _check_n(k, n)
    polygon = make_polygon(k)
    if k == 3 and n == 4 and allocation is None:
        q = QuantizerSet.from_parts(polygon.vertices, [[0.0, 0.0]])
        # the centre's cell meets each side in its middle third
        value = convert(0.5, 3, "parameter", convention)
        report = SolveReport(Constraint.NONE, k, n, q, value, distortion(q, polygon, convention).total,
                             expression="centre of the triangle", convention=convention)
        return q, value, report
    counts = tuple(allocation) if allocation is not None else balanced_allocations(k, n)[0]
    if len(counts) != k or min(counts) < 2 or sum(m - 1 for m in counts) != n:
        raise InvalidArgument(f"allocation {counts} does not place {n} points on {k} sides")
    q = assemble(k, counts)
    value = allocation_error(k, counts, convention)
    expr = " + ".join(f"2 sin^3(pi/{k}) / ({3 * k}*{(m - 1) ** 2})" for m in counts)
    report = SolveReport(Constraint.NONE, k, n, q, value, distortion(q, polygon, convention).total,
                         allocation=counts, expression=expr, convention=convention)
    return q, value, report


def error(k: int, n: int, convention: str = "arclength") -> float:
    """``V_n`` without building the point set."""
    _check_n(k, n)
    if k == 3 and n == 4:
        return convert(0.5, 3, "parameter", convention)
    return allocation_error(k, balanced_allocations(k, n)[0], convention)


def quantization_coefficient(k: int) -> float:
    """Limit of ``n^2 V_n``: ``(2/3) k^2 sin^3(pi/k)``."""
    return 2.0 / 3.0 * k * k * math.sin(math.pi / k) ** 3


@dataclass(frozen=True)
class DimensionReport:
    dimension_estimate: float
    coefficient_estimate: float
    closed_form_coefficient: float
    v_infinity: float
    samples: tuple[tuple[int, float], ...]
    # slope of log V against log n between n_max // 2 and n_max
    local_dimension_estimate: float


def dimension_and_coefficient(k: int, n_max: int) -> DimensionReport:
    """Finite-n estimates of the quantization dimension and coefficient.

    ``dimension_estimate`` is ``2 log n / -log(V_n - V_inf)`` at ``n_max``,
    which approaches 1 only logarithmically; ``local_dimension_estimate`` is
    the log-log slope and converges much faster.
    """
    if n_max < 4 * k:
        raise InvalidArgument(f"n_max must be at least 4k = {4 * k}")
    v_inf = 0.0
    samples = tuple((n, error(k, n)) for n in range(k, n_max + 1))
    v_max = samples[-1][1] - v_inf
    dim = 2.0 * math.log(n_max) / -math.log(v_max)
    n_half = n_max // 2
    v_half = error(k, n_half) - v_inf
    local = 2.0 * math.log(n_max / n_half) / math.log(v_half / v_max)
    return DimensionReport(dim, n_max ** 2 * v_max, quantization_coefficient(k), v_inf, samples, local)
