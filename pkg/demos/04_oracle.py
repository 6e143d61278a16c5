"""Cross-checking solver output with the brute-force oracle.

The oracle minimises the exact distortion over all free points at once from
many random starts, with no knowledge of allocations or symmetry.  A nudged
copy of a correct answer shows that a verdict also looks at where the points
are, not only at the error value.
"""
import dataclasses
import math

import numpy as np

from polyquant import solve
from polyquant.geometry import make_polygon
from polyquant.measure import QuantizerSet, distortion
from polyquant.oracle import exhaustive_allocation_check, verify

for constraint, n in (("none", 9), ("circumcircle", 10), ("incircle", 13), ("diag-short", 9)):
    _, _, report = solve(6, n, constraint)
    v = verify(report)
    print(f"{constraint:>12} n={n:>2}: solver {v.solver_value:.10f} oracle {v.oracle_value:.10f} "
          f"delta {v.value_delta:.1e} passed={v.passed}")

_, _, report = solve(6, 13, "incircle")
pts = np.array(report.quantizer.points)
i = np.flatnonzero(~report.quantizer.conditional)[0]
c, s = math.cos(1e-3), math.sin(1e-3)
pts[i] = [c * pts[i, 0] - s * pts[i, 1], s * pts[i, 0] + c * pts[i, 1]]
q = QuantizerSet(pts, report.quantizer.conditional)
value = distortion(q, make_polygon(6)).total
nudged = dataclasses.replace(report, quantizer=q, value=value, direct_value=value)
v = verify(nudged)
print(f"\nnudged incircle set: value moves by {v.value_delta:.1e}, a local re-solve moves a point by "
      f"{v.max_site_displacement:.1e}, passed={v.passed}")

table = exhaustive_allocation_check(6, 13, "circumcircle")
print(f"\ncircumcircle n=13: {len(table.values)} allocations, best {table.best}, "
      f"balanced ones are exactly the minimisers: {table.balanced_are_minimizers}")
