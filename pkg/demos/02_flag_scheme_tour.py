"""
The 7-class association scheme on flags
=======================================

Ordered pairs of flags (incident point-line pairs) of a quadrangle fall
into eight mutually exclusive classes: equal, same point, same line, the
two oriented "collinear on my line / on your line" classes, collinear on
a third line, meeting lines, and everything-disjoint.  The counts
p[k][i][j] of two-step walks are constant on each class, and every count
is a fixed polynomial in s and t.
"""

import numpy as np

from gqflags import (
    build_flag_scheme,
    build_grid,
    build_symplectic,
    element_orders,
    eta_poly,
    find_parabolics,
    p_poly,
    quotient_scheme,
    srg_parameters,
    tensor_from_polys,
    thin_group_table,
    verify_scheme,
)

w2 = build_symplectic(2)
data = build_flag_scheme(w2)
print(f"W(2) has {data.n} flags; relation matrix is {data.relation.shape}")

tensor = verify_scheme(data.relation, 7)
print("valencies:", tensor.eta)
for i in range(8):
    assert tensor.eta[i] == eta_poly(i).evaluate(2, 2)

# the whole tensor agrees with the closed-form table
assert np.array_equal(tensor.p, tensor_from_polys(2, 2).p)
print("all 512 intersection numbers match their closed forms, e.g.")
print("  p[1][2][3] =", tensor.p[1, 2, 3], "   closed form:", p_poly(1, 2, 3).to_text())
print("  p[7][7][7] =", tensor.p[7, 7, 7], "   closed form:", p_poly(7, 7, 7).to_text())

# the scheme is noncommutative ...
print("noncommutative:", f"p[1][4][5]={tensor.p[1,4,5]} != p[1][5][4]={tensor.p[1,5,4]}")

# ... and imprimitive: {0,1} and {0,2} are equivalence relations whose
# classes are the "same point" and "same line" bundles of flags
parabolics = find_parabolics(tensor, data.relation)
print("parabolics:", [sorted(p.classes) for p in parabolics])

# the quotient modulo {0,1} collapses each point's flags to the point
# itself and recovers the point graph
e1 = next(p for p in parabolics if p.classes == frozenset({0, 1}))
quotient = quotient_scheme(data.relation, e1)
print("quotient mod {0,1}: relation-1 graph is SRG", srg_parameters(quotient == 1))

# at s = t = 1 all eight classes have valency 1 and the classes form a
# group under complex product: the symmetries of a square
thin = build_flag_scheme(build_grid(1))
table = thin_group_table(verify_scheme(thin.relation, 7))
print("thin scheme at (1,1): element orders", element_orders(table))
print("  class 1 * class 3 * class 1 =", table[table[1, 3], 1], "(the inverse of class 3)")
