"""Optimal sets on the boundary of a regular polygon with the vertices prescribed.

Free points spread over the sides as evenly as possible and sit equally spaced
on each side, so the error has a closed form.  The script prints a few
errors, the number of equally good allocations and one point set.
"""
import math

from polyquant.unconstrained import balanced_allocations, error, optimal_set

for k in (3, 4, 6):
    row = ", ".join(f"V_{n}={error(k, n):.6f}" for n in range(k, k + 7))
    print(f"k={k}: {row}")

print()
for n in range(6, 13):
    print(f"hexagon n={n}: {len(balanced_allocations(6, n))} optimal allocation(s), "
          f"first {balanced_allocations(6, n)[0]}")

q, value, report = optimal_set(6, 9)
print(f"\nhexagon, n=9, V_9 = {value:.12f} (5/96 = {5 / 96:.12f})")
print("closed form:", report.expression)
for (x, y), fixed in zip(q.points, q.conditional):
    print(f"  ({x:+.6f}, {y:+.6f}) {'vertex' if fixed else 'free'}")

# the triangle with four points is the one case where a point leaves the sides
q, value, _ = optimal_set(3, 4, convention="parameter")
print(f"\ntriangle n=4: extra point {q.free[0]}, V_4 = {value} with unit mass per side parameter")
print(f"same set with the default density: {error(3, 4):.6f} = 1/(2 sqrt 3) = {1 / (2 * math.sqrt(3)):.6f}")
