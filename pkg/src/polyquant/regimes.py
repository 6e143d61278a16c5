"""One entry point for every constraint regime."""
from __future__ import annotations

from . import circle_constrained, diagonal_constrained, unconstrained
from .errors import InvalidArgument
from .geometry import Constraint


def solve(k: int, n: int, constraint="none", method: str = "closed_form"):
    """Conditional optimal set of ``n`` points on the k-gon under ``constraint``.

    ``method`` only matters for the long diagonal (see
    :func:`~polyquant.diagonal_constrained.long_diagonal_optimal_set`).
    Returns ``(quantizer, V_n, report)`` with errors in the default convention.
    """
    constraint = Constraint(constraint)
    constraint.check(k)
    if constraint is Constraint.NONE:
        return unconstrained.optimal_set(k, n)
    if constraint is Constraint.CIRCUMCIRCLE:
        return circle_constrained.circumcircle_optimal_set(k, n)
    if constraint is Constraint.INCIRCLE:
        return circle_constrained.incircle_optimal_set(k, n)
    if constraint is Constraint.DIAG_SHORT:
        return diagonal_constrained.short_diagonal_optimal_set(n)
    if constraint is Constraint.DIAG_LONG:
        return diagonal_constrained.long_diagonal_optimal_set(n, method)
    raise InvalidArgument(f"unknown constraint {constraint!r}")  # pragma: no cover
