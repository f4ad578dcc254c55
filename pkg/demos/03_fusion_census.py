"""
Fusions: merging classes that still make a scheme
=================================================

A partition of the seven nonzero classes yields a coarser scheme exactly
when the blockwise sums of intersection numbers are constant inside each
block.  Checking this symbolically (the counts are polynomials in s and
t) classifies every candidate partition by the parameter condition under
which it fuses: always, on the diagonal s = t, on a boundary line t = 1
or s = 1, at isolated orders, or never.
"""

from gqflags import (
    FeasibilityTag,
    IndexPartition,
    build_flag_scheme,
    build_symplectic,
    check_fusion,
    classify_partition,
    dual_partition,
    enumerate_fusions,
    set_partitions,
    tensor_from_polys,
    verify_scheme,
)

# numeric enumeration at a concrete order: brute force over all 877
# partitions of {1..7}
tensor = tensor_from_polys(2, 2)
fusions = enumerate_fusions(tensor)
print(f"at (s,t) = (2,2) exactly {len(fusions)} non-trivial fusions exist:")
for part in fusions:
    print("  ", part.render(), " feasible:", classify_partition(part).render())

# the census is closed under point-line duality (1<->2, 3<->4, 5<->6)
names = {p.render() for p in fusions}
assert all(dual_partition(p).render() in names for p in fusions)

# the full symbolic classification, independent of any concrete quadrangle
rows = []
for blocks in set_partitions(range(1, 8)):
    if not 2 <= len(blocks) <= 6:
        continue
    part = IndexPartition(7, tuple(frozenset(b) for b in blocks))
    if not part.satisfies_star_rule():
        continue
    cond = classify_partition(part)
    if cond.tag is not FeasibilityTag.NEVER:
        rows.append((part.render(), cond.render()))
print(f"\nsymbolic census: {len(rows)} feasible partitions in all")
for text, cond in sorted(rows, key=lambda r: (len(r[0]), r[0])):
    print(f"  {text:34s} {cond}")

# one partition fuses at every s = t: {1,2} {3,4} {5,6} {7}; applying it
# to W(2) and verifying gives a symmetric 4-class scheme
part = IndexPartition(7, ({1, 2}, {3, 4}, {5, 6}, {7}))
data = build_flag_scheme(build_symplectic(2))
w2_tensor = verify_scheme(data.relation, 7)
assert check_fusion(w2_tensor, part)
print("\nthe diagonal fusion merges to 4 classes; see the reconstruction demo")
