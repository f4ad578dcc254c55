"""
Building finite generalized quadrangles and checking the axioms
===============================================================

A generalized quadrangle of order (s, t) is a point-line geometry where
every line carries s+1 points, every point lies on t+1 lines, and every
non-incident point-line pair is joined by exactly one flag path.  Two
families cover everything this library needs: grids (order (s, 1)) and
the symplectic quadrangles over prime fields (order (q, q)).
"""

from gqflags import (
    build_grid,
    build_symplectic,
    dualize,
    point_graph,
    srg_parameters,
    verify_gq,
)

# A 4x4 grid of points, lines = rows and columns: the quadrangle of order (3, 1).
grid = build_grid(3)
order = verify_gq(grid)
print(f"grid(3): {grid.num_points} points, {grid.num_lines} lines, order ({order.s},{order.t})")

# The symplectic quadrangle over F_2: 15 points, 15 lines, order (2, 2).
w2 = build_symplectic(2)
order = verify_gq(w2)
print(f"W(2):    {w2.num_points} points, {w2.num_lines} lines, order ({order.s},{order.t})")

# Point-line duality swaps the parameters.
dual = dualize(grid)
order = verify_gq(dual)
print(f"dual grid(3): {dual.num_points} points, {dual.num_lines} lines, order ({order.s},{order.t})")
assert dualize(dual) == grid  # duality is an involution

# Collinearity makes the points into a strongly regular graph with
# parameters ((s+1)(st+1), s(t+1), s-1, t+1).
for name, structure in [("W(2)", w2), ("grid(3)", grid)]:
    print(f"point graph of {name}: SRG{srg_parameters(point_graph(structure))}")

# The counting identities |P| = (s+1)(st+1), |L| = (t+1)(st+1) hold for
# every verified quadrangle:
for structure in [grid, w2, build_symplectic(3), dualize(build_grid(2))]:
    o = verify_gq(structure)
    assert structure.num_points == (o.s + 1) * (o.s * o.t + 1)
    assert structure.num_lines == (o.t + 1) * (o.s * o.t + 1)
print("counting identities hold for all built quadrangles")
