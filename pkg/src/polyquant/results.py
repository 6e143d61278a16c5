from __future__ import annotations

from dataclasses import dataclass, field, replace

from .geometry import Constraint
from .measure import QuantizerSet


@dataclass(frozen=True)
class SolveReport:
    """Everything a solver knows about one (k, n, constraint) instance.

    ``value`` is the error produced by the solver's own route (closed form or
    group sums); ``direct_value`` re-integrates the assembled point set against
    the full boundary measure and is the number to trust if they disagree.
    """

    constraint: Constraint
    k: int
    n: int
    quantizer: QuantizerSet
    value: float
    direct_value: float
    stationarity_residual: float = 0.0
    allocation: tuple[int, ...] | None = None
    expression: str | None = None
    groups: dict = field(default_factory=dict, compare=False, repr=False)
    convention: str = "arclength"
    oracle_delta: float | None = None

    @property
    def consistency_gap(self) -> float:
        return abs(self.value - self.direct_value)

    def with_oracle(self, delta: float) -> "SolveReport":
        return replace(self, oracle_delta=float(delta))
