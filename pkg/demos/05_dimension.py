"""How fast the error decays.

n^2 V_n settles on (2/3) k^2 sin^3(pi/k) quickly.  The ratio
2 log n / -log V_n tends to 1 only like 1 + log C / (2 log n), so it is still
several percent above 1 at a few hundred points, while the log-log slope is
already 1.
"""
import math

from polyquant.unconstrained import dimension_and_coefficient

print("  k   n_max   n^2 V_n     closed form   2log n/-log V_n   log-log slope")
for k in (3, 4, 6, 12):
    for n_max in (10 * k, 100 * k, 1000 * k):
        r = dimension_and_coefficient(k, n_max)
        print(f"{k:>3} {n_max:>7}   {r.coefficient_estimate:.6f}    {r.closed_form_coefficient:.6f}"
              f"      {r.dimension_estimate:.4f}            {r.local_dimension_estimate:.4f}")
    c = r.closed_form_coefficient
    n = 100 * k
    print(f"      predicted ratio at n={n}: {2 * math.log(n) / (2 * math.log(n) - math.log(c)):.4f}")
