"""Free points restricted to the circumcircle or the incircle of the hexagon.

Each side is served by its own arc, so the problem splits into one small
symmetric problem per side.  The incircle matches the unconstrained errors up
to twelve points (the side midpoints are on the incircle) and falls behind at
thirteen.
"""
import math

from polyquant.circle_constrained import (circumcircle_group_solve, circumcircle_optimal_set, incircle_group_solve,
                                          incircle_optimal_set)
from polyquant.unconstrained import error

print("points per arc   circumcircle group error   incircle group error")
for ell in range(2, 7):
    c = circumcircle_group_solve(6, ell)
    i = incircle_group_solve(6, ell - 2)
    print(f"{ell:>14}   {c.group_distortion:>24.12f}   {i.group_distortion:>20.12f}")

g = circumcircle_group_solve(6, 3)
print(f"\none point on the bottom arc sits at {g.free_sites[0].round(9)}, "
      f"group error {g.group_distortion:.12f} = sqrt3/2 - 31/36 = {math.sqrt(3) / 2 - 31 / 36:.12f}")

print("\n  n   unconstrained   circumcircle       incircle")
for n in range(6, 15):
    print(f"{n:>3}   {error(6, n):.10f}   {circumcircle_optimal_set(6, n)[1]:.10f}   "
          f"{incircle_optimal_set(6, n)[1]:.10f}")
