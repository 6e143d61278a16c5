"""Free points on a diagonal of the hexagon.

Short diagonal A6A4: the triangle A6A4A5 is moved onto a reference triangle,
solved there and moved back.  Long diagonal A1A4: the explicit equally spaced
groups, next to the exact minimisers of each group's true error.  The two
routes differ slightly, and the exact distortion of each set is printed
alongside.
"""
from polyquant.diagonal_constrained import long_diagonal_optimal_set, short_diagonal_optimal_set, triangle_q_solve

print("triangle subproblem")
for m in range(3, 9):
    sol = triangle_q_solve(m)
    print(f"  m={m}: V={sol.value:.10f} left {sol.left_coords.round(6)} right {sol.right_coords.round(6)}")

print("\nshort diagonal")
for n in range(6, 12):
    q, v, rep = short_diagonal_optimal_set(n)
    print(f"  n={n:>2}: V_n={v:.10f}  free points {q.free.round(6).tolist()}")

print("\nlong diagonal         closed form    (its exact error)          exact groups")
for n in range(6, 12):
    _, v_cf, rep_cf = long_diagonal_optimal_set(n)
    _, v_ex, _ = long_diagonal_optimal_set(n, "exact")
    print(f"  n={n:>2}:   {v_cf:.10f}    ({rep_cf.direct_value:.10f})    {v_ex:.10f}")
