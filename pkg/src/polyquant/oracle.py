"""Brute-force checks that share no structure with the solvers.

The solvers rely on group decompositions, symmetric folds and closed forms.
The oracle does none of that: it minimises the exact distortion of the whole
polygon over the free points' constraint coordinates from many random
starts, using the analytic gradient of the distortion with respect to the
sites, and reports how far a solver result is from what it finds.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment, minimize

from .errors import InstanceTooLarge, InvalidArgument
from .geometry import Constraint, RegularPolygon, diagonal, make_polygon, symmetries_fixing
from .measure import QuantizerSet, side_weight
from .results import SolveReport

DEFAULT_SEED = 20250101
MAX_COMPOSITIONS = 10 ** 6


def _env_seed() -> int:
    return int(os.environ.get("POLYQUANT_SEED", DEFAULT_SEED))


@dataclass(frozen=True)
class OracleConfig:
    boundary_samples_per_side: int = 20000
    restarts: int = 16
    perturbation_scale: float = 0.05
    seed: int = field(default_factory=_env_seed)
    value_tolerance: float = 1e-6
    # a verified set may move at most this far when re-optimised locally
    site_tolerance: float = 1e-4

    def __post_init__(self):
        for name in ("boundary_samples_per_side", "restarts", "perturbation_scale", "value_tolerance",
                     "site_tolerance"):
            if not getattr(self, name) > 0:
                raise InvalidArgument(f"{name} must be positive")


@dataclass(frozen=True)
class OracleVerdict:
    solver_value: float
    oracle_value: float
    value_delta: float
    max_site_displacement: float
    passed: bool
    # distance to the oracle's own optimum after the best symmetry alignment;
    # large values are expected when several allocations tie
    aligned_displacement: float = float("nan")
    direct_value: float = float("nan")


# ------------------------------------------------------------------ evaluation

class BoundaryDistortion:
    """Exact distortion of the polygon boundary with its gradient in the sites.

    All sides are processed at once: on a side the squared distance to a site
    is a shared quadratic plus a line in ``t``, so the cells come from the
    pairwise crossings of those lines.
    """

    def __init__(self, polygon: RegularPolygon, convention: str = "arclength"):
        self.polygon = polygon
        self.P = np.array([s.p for s in polygon.sides])
        self.D = np.array([s.direction for s in polygon.sides])
        self.dd = (self.D ** 2).sum(1)
        self.w = side_weight(polygon.k, convention)

    def __call__(self, sites) -> float:
        return self.value_and_grad(sites)[0]

    def value_and_grad(self, sites):
        S = np.asarray(sites, dtype=float).reshape(-1, 2)
        n = len(S)
        rel = S[None, :, :] - self.P[:, None, :]  # (K, n, 2)
        c = (rel ** 2).sum(-1)
        b = -2.0 * np.einsum("kd,knd->kn", self.D, rel)
        ts = [np.zeros((len(self.P), 1)), np.ones((len(self.P), 1))]
        if n > 1:
            i, j = np.triu_indices(n, 1)
            den = b[:, j] - b[:, i]
            with np.errstate(divide="ignore", invalid="ignore"):
                r = np.where(den != 0.0, (c[:, i] - c[:, j]) / den, 0.0)
            ts.append(np.clip(r, 0.0, 1.0))
        T = np.sort(np.concatenate(ts, axis=1), axis=1)
        mid = 0.5 * (T[:, :-1] + T[:, 1:])
        h = 0.5 * (T[:, 1:] - T[:, :-1])
        owner = np.argmin(c[:, None, :] + b[:, None, :] * mid[:, :, None], axis=2)
        e = self.P[:, None, :] + mid[:, :, None] * self.D[:, None, :] - S[owner]
        ee = (e ** 2).sum(-1)
        value = self.w * float(np.sum(2 * h * ee + (2.0 / 3.0) * h ** 3 * self.dd[:, None]))
        grad = np.zeros_like(S)
        np.add.at(grad, owner.ravel(), (-4.0 * self.w * h[:, :, None] * e).reshape(-1, 2))
        return value, grad


def sampled_distortion(quantizer, polygon: RegularPolygon, config: OracleConfig | None = None,
                       convention: str = "arclength") -> float:
    """Midpoint-rule estimate of the distortion, uniform in ``t`` on every side."""
    config = config or OracleConfig()
    S = quantizer.points if isinstance(quantizer, QuantizerSet) else np.asarray(quantizer, float).reshape(-1, 2)
    N = config.boundary_samples_per_side
    t = (np.arange(N) + 0.5) / N
    total = 0.0
    for side in polygon.sides:
        x = side.point(t)
        d2 = ((x[:, None, :] - S[None, :, :]) ** 2).sum(-1).min(1)
        total += d2.sum()
    return side_weight(polygon.k, convention) * total / N


# ---------------------------------------------------------- parametrizations

class _Coordinates:
    """Maps constraint coordinates of the free points to the plane."""

    span: float = 1.0

    def spread(self, f: int) -> np.ndarray:
        raise NotImplementedError

    def random(self, f: int, rng) -> np.ndarray:
        return rng.uniform(0.0, self.span, size=f)

    def points(self, x) -> np.ndarray:
        raise NotImplementedError

    def jacobian(self, x) -> np.ndarray:
        """d point / d coordinate, one 2-vector per free point."""
        raise NotImplementedError

    def locate(self, pts) -> np.ndarray:
        """Coordinates of points already on the constraint set."""
        raise NotImplementedError


class _Perimeter(_Coordinates):
    def __init__(self, polygon):
        self.V = np.asarray(polygon.vertices)
        self.k = polygon.k
        self.span = float(polygon.k)

    def spread(self, f):
        return (np.arange(f) + 0.5) * self.k / max(f, 1)

    def _split(self, x):
        x = np.mod(np.asarray(x, float), self.k)
        j = np.minimum(np.floor(x).astype(int), self.k - 1)
        return j, x - j

    def points(self, x):
        j, t = self._split(x)
        return self.V[j] + t[:, None] * (self.V[(j + 1) % self.k] - self.V[j])

    def jacobian(self, x):
        j, _ = self._split(x)
        return self.V[(j + 1) % self.k] - self.V[j]

    def locate(self, pts):
        out = []
        for p in np.asarray(pts).reshape(-1, 2):
            best = None
            for j in range(self.k):
                a, b = self.V[j], self.V[(j + 1) % self.k]
                t = float(np.clip((p - a) @ (b - a) / ((b - a) @ (b - a)), 0, 1))
                d = np.linalg.norm(a + t * (b - a) - p)
                if best is None or d < best[0]:
                    best = (d, j + t)
            out.append(best[1])
        return np.array(out)


class _Circle(_Coordinates):
    def __init__(self, radius):
        self.R = radius
        self.span = 2 * math.pi

    def spread(self, f):
        return 1.5 * math.pi + 2 * math.pi * (np.arange(f) + 0.5) / max(f, 1)

    def points(self, x):
        x = np.asarray(x, float)
        return self.R * np.column_stack([np.cos(x), np.sin(x)])

    def jacobian(self, x):
        x = np.asarray(x, float)
        return self.R * np.column_stack([-np.sin(x), np.cos(x)])

    def locate(self, pts):
        pts = np.asarray(pts).reshape(-1, 2)
        return np.arctan2(pts[:, 1], pts[:, 0])


class _Chord(_Coordinates):
    """A segment through the bounded map ``u = (1 - cos(pi x)) / 2``."""

    def __init__(self, seg):
        self.a, self.v = seg.p, seg.q - seg.p

    def spread(self, f):
        u = (np.arange(f) + 0.5) / max(f, 1)
        return np.arccos(1 - 2 * u) / math.pi

    def points(self, x):
        u = 0.5 * (1 - np.cos(math.pi * np.asarray(x, float)))
        return self.a + u[:, None] * self.v

    def jacobian(self, x):
        du = 0.5 * math.pi * np.sin(math.pi * np.asarray(x, float))
        return du[:, None] * self.v

    def locate(self, pts):
        u = np.clip((np.asarray(pts).reshape(-1, 2) - self.a) @ self.v / (self.v @ self.v), 0, 1)
        return np.arccos(1 - 2 * u) / math.pi


def _coordinates(constraint: Constraint, polygon: RegularPolygon) -> _Coordinates:
    if constraint is Constraint.NONE:
        return _Perimeter(polygon)
    if constraint is Constraint.CIRCUMCIRCLE:
        return _Circle(1.0)
    if constraint is Constraint.INCIRCLE:
        return _Circle(polygon.apothem)
    return _Chord(diagonal(constraint))


LBFGS_OPTIONS = dict(maxiter=5000, ftol=1e-16, gtol=1e-13, maxcor=30)


def _local(fun_grad, x0):
    res = minimize(fun_grad, x0, jac=True, method="L-BFGS-B", options=LBFGS_OPTIONS)
    # a second run from the result clears most early stops on kinks
    res2 = minimize(fun_grad, res.x, jac=True, method="L-BFGS-B", options=LBFGS_OPTIONS)
    return res2 if res2.fun <= res.fun else res


class _Problem:
    def __init__(self, constraint, polygon, convention="arclength"):
        self.constraint = Constraint(constraint)
        self.constraint.check(polygon.k)
        self.polygon = polygon
        self.fixed = np.asarray(polygon.vertices)
        self.evaluator = BoundaryDistortion(polygon, convention)
        self.coords = _coordinates(self.constraint, polygon)

    def on_curve(self, x):
        pts = self.coords.points(x)
        v, g = self.evaluator.value_and_grad(np.vstack([self.fixed, pts]))
        gf = g[len(self.fixed):]
        return v, (gf * self.coords.jacobian(x)).sum(1)

    def planar(self, y):
        pts = np.asarray(y).reshape(-1, 2)
        v, g = self.evaluator.value_and_grad(np.vstack([self.fixed, pts]))
        return v, g[len(self.fixed):].ravel()

    def polish(self, pts):
        """Local minimum near ``pts`` in the constraint's own coordinates."""
        pts = np.asarray(pts, float).reshape(-1, 2)
        if len(pts) == 0:
            return pts, self.evaluator(self.fixed)
        if self.constraint is Constraint.NONE:
            res = _local(self.planar, pts.ravel())
            return res.x.reshape(-1, 2), float(res.fun)
        res = _local(self.on_curve, self.coords.locate(pts))
        return self.coords.points(res.x), float(res.fun)


def _inside(polygon: RegularPolygon, f: int, rng) -> np.ndarray:
    """``f`` points uniform inside the polygon (a random fan triangle each)."""
    V = np.asarray(polygon.vertices)
    j = rng.integers(0, polygon.k, size=f)
    u, v = rng.uniform(size=(2, f))
    flip = u + v > 1
    u[flip], v[flip] = 1 - u[flip], 1 - v[flip]
    return u[:, None] * V[j] + v[:, None] * V[(j + 1) % polygon.k]


def global_minimize(constraint, free_count: int, polygon: RegularPolygon | int,
                    config: OracleConfig | None = None, convention: str = "arclength"):
    """Best set found by a multi-start local search; returns ``(quantizer, value)``.

    Starts are an even spread of the free points, jittered copies of it and
    uniformly random placements.  For the unconstrained case every result is
    also re-optimised with the free points anywhere in the plane, and further
    starts place the free points at random inside the polygon or one of them
    at the centre.
    """
    config = config or OracleConfig()
    polygon = make_polygon(polygon) if isinstance(polygon, int) else polygon
    if free_count < 0:
        raise InvalidArgument("free_count must be >= 0")
    prob = _Problem(constraint, polygon, convention)
    if free_count == 0:
        return QuantizerSet.from_parts(prob.fixed), prob.evaluator(prob.fixed)
    rng = np.random.default_rng(config.seed)
    c = prob.coords
    base = c.spread(free_count)
    starts = [base]
    for r in range(1, config.restarts):
        if r % 2:
            starts.append(base + rng.uniform(-1, 1, free_count) * config.perturbation_scale * c.span)
        else:
            starts.append(c.random(free_count, rng))
    candidates = []
    for x0 in starts:
        res = _local(prob.on_curve, x0)
        candidates.append((float(res.fun), c.points(res.x)))
    if prob.constraint is Constraint.NONE:
        polished = [prob.polish(p)[::-1] for _, p in candidates]
        best_pts = min(candidates, key=lambda v: v[0])[1]
        polished.append(prob.polish(np.vstack([[0.0, 0.0], best_pts[1:]]))[::-1])
        for _ in range(config.restarts):
            res = _local(prob.planar, _inside(polygon, free_count, rng).ravel())
            polished.append((float(res.fun), res.x.reshape(-1, 2)))
        candidates += polished
    # lowest value wins; the earliest candidate on ties keeps runs reproducible
    value, pts = min(candidates, key=lambda v: v[0])
    return QuantizerSet.from_parts(prob.fixed, pts), value


# ----------------------------------------------------------------- allocations

@dataclass(frozen=True)
class AllocationTable:
    regime: Constraint
    k: int
    n: int
    values: dict
    minimizers: tuple
    balanced: tuple

    @property
    def best(self) -> tuple:
        return self.minimizers[0]

    @property
    def best_value(self) -> float:
        return self.values[self.best]

    @property
    def balanced_are_minimizers(self) -> bool:
        return set(self.minimizers) == set(self.balanced)


def _compositions(total: int, parts: int, minimum: int):
    """All tuples of ``parts`` integers ``>= minimum`` adding to ``total``."""
    free = total - parts * minimum
    if free < 0:
        return
    for bars in itertools.combinations(range(free + parts - 1), parts - 1):
        edges = (-1,) + bars + (free + parts - 1,)
        yield tuple(b - a - 1 + minimum for a, b in zip(edges[:-1], edges[1:]))


def exhaustive_allocation_check(k: int, n: int, regime="none", rel_tol: float = 1e-12) -> AllocationTable:
    """Evaluate every allocation of points to sides and list the minimisers.

    Allocations are points per side with both vertices counted (so at least
    2) for the unconstrained and circumcircle regimes, and free points per
    side for the incircle.
    """
    from . import circle_constrained as cc
    from . import unconstrained as uc

    regime = Constraint(regime)
    if regime.is_diagonal:
        raise InvalidArgument("allocations are only defined for the side-symmetric regimes")
    if n < k:
        raise InvalidArgument(f"n={n} is smaller than k={k}")
    if regime is Constraint.INCIRCLE:
        total, minimum = n - k, 0
    else:
        total, minimum = n + k, 2
    count = math.comb(total - k * minimum + k - 1, k - 1)
    if count > MAX_COMPOSITIONS:
        raise InstanceTooLarge(f"{count} allocations exceed the limit of {MAX_COMPOSITIONS}")
    if regime is Constraint.NONE:
        group = lambda m: uc.side_error(k, m)
    elif regime is Constraint.CIRCUMCIRCLE:
        group = lambda m: cc.circumcircle_group_solve(k, m).group_distortion
    else:
        group = lambda m: cc.incircle_group_solve(k, m).group_distortion
    cache = {}
    values = {}
    for alloc in _compositions(total, k, minimum):
        for m in alloc:
            if m not in cache:
                cache[m] = group(m)
        values[alloc] = math.fsum(cache[m] for m in alloc)
    best = min(values.values())
    minimizers = tuple(sorted((a for a, v in values.items() if v <= best * (1 + rel_tol)), reverse=True))
    balanced = tuple(a for a in values if max(a) - min(a) <= 1)
    return AllocationTable(regime, k, n, values, minimizers, balanced)


# ----------------------------------------------------------------- verdicts

def _free_points(report: SolveReport) -> np.ndarray:
    return report.quantizer.free


def aligned_displacement(a, b, maps) -> float:
    """Smallest over ``maps`` of the worst matched distance between point sets."""
    a = np.asarray(a).reshape(-1, 2)
    b = np.asarray(b).reshape(-1, 2)
    if len(a) != len(b):
        return float("inf")
    if len(a) == 0:
        return 0.0
    best = float("inf")
    for g in maps:
        ga = g(a)
        cost = np.linalg.norm(ga[:, None, :] - b[None, :, :], axis=-1)
        r, c = linear_sum_assignment(cost)
        best = min(best, float(cost[r, c].max()))
    return best


def verify(report: SolveReport, config: OracleConfig | None = None) -> OracleVerdict:
    """Compare a solver result with the oracle.

    The verdict passes when the oracle's global value agrees with the solver's
    value within ``value_tolerance`` and a local re-optimisation started at
    the solver's points moves none of them further than ``site_tolerance``.
    """
    config = config or OracleConfig()
    polygon = make_polygon(report.k)
    free = _free_points(report)
    global_q, oracle_value = global_minimize(report.constraint, len(free), polygon, config, report.convention)
    prob = _Problem(report.constraint, polygon, report.convention)
    direct = prob.evaluator(report.quantizer.points)
    polished, local_value = prob.polish(free)
    oracle_value = min(oracle_value, local_value)
    moved = float(np.max(np.linalg.norm(polished - free, axis=1))) if len(free) else 0.0
    aligned = aligned_displacement(free, global_q.free, symmetries_fixing(report.constraint, report.k))
    delta = abs(report.value - oracle_value)
    tol = config.value_tolerance
    passed = delta <= tol and oracle_value >= report.value - tol and moved <= config.site_tolerance
    return OracleVerdict(report.value, oracle_value, delta, moved, passed, aligned, direct)
