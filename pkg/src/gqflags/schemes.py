"""Generic association-scheme machinery on dense relation matrices.

A scheme on n points is an n x n integer matrix with entries in 0..d:
entry [x, y] is the index of the relation containing the ordered pair
(x, y), with 0 the diagonal relation.  All counting is exact; the heavy
pair-triple counts go through float64 matrix products, which are exact
for the sizes handled here (counts never exceed n < 2**53).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    MissingClassError,
    NotASchemeError,
    NotThinError,
    QuotientIllDefinedError,
)


@dataclass(frozen=True)
class IntersectionTensor:
    """All intersection numbers p[k][i][j] of a verified scheme.

    ``p[k][i][j]`` counts, for any pair (x, y) in relation k, the vertices z
    with (x, z) in relation i and (z, y) in relation j.  ``eta`` holds the
    valencies, ``star`` the transpose involution on class indices.
    """

    d: int
    p: np.ndarray
    eta: tuple
    star: tuple

    @property
    def order(self) -> int:
        return int(sum(self.eta))

    def is_symmetric(self) -> bool:
        return all(self.star[i] == i for i in range(self.d + 1))


@dataclass(frozen=True)
class Parabolic:
    """A union of classes (always containing 0) that is an equivalence relation."""

    classes: frozenset
    blocks: tuple

    @property
    def is_trivial(self) -> bool:
        # {0} alone, or the full relation set (single block)
        return len(self.classes) == 1 or len(self.blocks) == 1


def _class_masks(relation: np.ndarray, d: int):
    return [relation == k for k in range(d + 1)]


def _check_matrix_form(relation: np.ndarray, d: int) -> None:
    if relation.ndim != 2 or relation.shape[0] != relation.shape[1]:
        raise NotASchemeError("relation matrix must be square")
    n = relation.shape[0]
    if relation.min() < 0 or relation.max() > d:
        bad = np.argwhere((relation < 0) | (relation > d))[0]
        raise NotASchemeError(
            f"entry {relation[tuple(bad)]} at {tuple(bad)} outside 0..{d}",
            witness=tuple(int(v) for v in bad),
        )
    diag = np.diagonal(relation)
    if (diag != 0).any():
        x = int(np.argwhere(diag != 0)[0][0])
        raise NotASchemeError(f"diagonal entry at vertex {x} is not 0", witness=(x, x))
    off = relation == 0
    np.fill_diagonal(off, False)
    if off.any():
        x, y = (int(v) for v in np.argwhere(off)[0])
        raise NotASchemeError(f"off-diagonal pair ({x},{y}) labeled 0", witness=(x, y))
    # counts stay below n, so float64 products are exact for any sane n
    if n >= 2**26:
        raise NotASchemeError("matrix too large for exact float64 counting")


def _find_star(relation: np.ndarray, d: int, masks) -> tuple:
    star = [0] * (d + 1)
    transposed = relation.T
    for i in range(1, d + 1):
        pairs = np.argwhere(masks[i])
        if len(pairs) == 0:
            raise MissingClassError(f"class {i} is empty")
        x, y = (int(v) for v in pairs[0])
        j = int(relation[y, x])
        if not np.array_equal(transposed == i, relation == j):
            bad = np.argwhere((transposed == i) != (relation == j))[0]
            raise NotASchemeError(
                f"transpose of class {i} is not class {j}",
                witness=tuple(int(v) for v in bad),
            )
        star[i] = j
    return tuple(star)


def verify_scheme(relation: np.ndarray, d: int) -> IntersectionTensor:
    """Verify the association-scheme axioms and return the intersection tensor.

    Counts p[k][i][j] via one-hot matrix products and confirms the count is
    constant over every pair of each class; non-constant counts raise
    NotASchemeError with the triple and a witness pair.
    """
    relation = np.asarray(relation)
    _check_matrix_form(relation, d)
    masks = _class_masks(relation, d)
    star = _find_star(relation, d, masks)

    onehot = np.stack([m.astype(np.float64) for m in masks])
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    flat_rel = relation.ravel()
    flat_masks = [flat_rel == k for k in range(d + 1)]
    for i in range(d + 1):
        for j in range(d + 1):
            counts = (onehot[i] @ onehot[j]).ravel()
            for k in range(d + 1):
                sel = counts[flat_masks[k]]
                lo, hi = sel.min(), sel.max()
                if lo != hi:
                    first = int(np.flatnonzero(flat_masks[k])[0])
                    ref = counts[first]
                    bad_flat = int(
                        np.flatnonzero(flat_masks[k] & (counts != ref))[0]
                    )
                    n = relation.shape[0]
                    raise NotASchemeError(
                        f"count for (k,i,j)=({k},{i},{j}) is not constant: "
                        f"{int(ref)} vs {int(counts[bad_flat])}",
                        triple=(k, i, j),
                        witness=(bad_flat // n, bad_flat % n),
                    )
                p[k, i, j] = int(lo)

    eta = tuple(int(p[0, i, star[i]]) for i in range(d + 1))
    tensor = IntersectionTensor(d=d, p=p, eta=eta, star=star)
    check_tensor_identities(tensor)
    return tensor


def check_tensor_identities(tensor: IntersectionTensor) -> None:
    """Post-hoc pass: the standard exact identities every tensor must satisfy."""
    d, p, eta, star = tensor.d, tensor.p, tensor.eta, tensor.star
    for i in range(d + 1):
        for j in range(d + 1):
            expected = eta[i] if j == star[i] else 0
            if p[0, i, j] != expected:
                raise NotASchemeError(
                    f"p[0][{i}][{j}] = {p[0, i, j]}, expected {expected}",
                    triple=(0, i, j),
                )
    for k in range(d + 1):
        for i in range(d + 1):
            if p[k, i, :].sum() != eta[i]:
                raise NotASchemeError(
                    f"row sum p[{k}][{i}][*] != eta_{i}", triple=(k, i, -1)
                )
            for j in range(d + 1):
                if p[k, i, j] != p[star[k], star[j], star[i]]:
                    raise NotASchemeError(
                        "transpose identity fails", triple=(k, i, j)
                    )
                if eta[k] * p[k, i, j] != eta[i] * p[star[i], j, star[k]]:
                    raise NotASchemeError(
                        "valency-weighted symmetry fails", triple=(k, i, j)
                    )
    if sum(eta) != tensor.order:
        raise NotASchemeError("valencies do not sum to the order")


def _blocks_of_union(relation: np.ndarray, classes) -> tuple:
    """Connected components of the union of the given relation classes."""
    n = relation.shape[0]
    member = np.isin(relation, list(classes))
    seen = np.zeros(n, dtype=bool)
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in np.flatnonzero(member[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        blocks.append(tuple(sorted(comp)))
    return tuple(sorted(blocks))


def find_parabolics(tensor: IntersectionTensor, relation: np.ndarray) -> list:
    """Exhaustively test all 2**d class subsets containing 0 for equivalence.

    A subset is an equivalence relation exactly when it is closed under the
    transpose involution and under the complex product (nonzero p[k][i][j]
    with i, j inside forces k inside).  Returns every parabolic, trivial
    ones included.
    """
    d, p, star = tensor.d, tensor.p, tensor.star
    found = []
    nonzero = list(range(1, d + 1))
    for mask in range(2 ** d):
        subset = {0} | {nonzero[b] for b in range(d) if mask >> b & 1}
        if any(star[i] not in subset for i in subset):
            continue
        closed = True
        for i in subset:
            for j in subset:
                for k in range(d + 1):
                    if p[k, i, j] != 0 and k not in subset:
                        closed = False
                        break
                if not closed:
                    break
            if not closed:
                break
        if closed:
            blocks = _blocks_of_union(relation, subset)
            # closure guarantees transitivity; blocks then partition the set
            found.append(Parabolic(frozenset(subset), blocks))
    found.sort(key=lambda e: (len(e.classes), sorted(e.classes)))
    return found


def quotient_scheme(relation: np.ndarray, parabolic: Parabolic) -> np.ndarray:
    """Relation matrix induced on the blocks of a parabolic.

    Two ordered block pairs get the same quotient class exactly when their
    member pairs meet the same set of original classes; the sets must be
    equal or disjoint across block pairs, otherwise the quotient is
    ill-defined and the offending block pairs are reported.
    """
    blocks = parabolic.blocks
    nb = len(blocks)
    fingerprints = {}
    for a in range(nb):
        ia = np.array(blocks[a])
        for b in range(nb):
            ib = np.array(blocks[b])
            met = frozenset(int(v) for v in np.unique(relation[np.ix_(ia, ib)]))
            fingerprints[(a, b)] = met

    by_class = {}
    for pair, met in fingerprints.items():
        for cls in met:
            prior = by_class.setdefault(cls, (pair, met))
            if prior[1] != met:
                raise QuotientIllDefinedError(
                    f"class {cls} occurs in distinct block-pair patterns",
                    witness=(prior[0], pair),
                )

    diag = fingerprints[(0, 0)]
    if not diag <= parabolic.classes:
        raise QuotientIllDefinedError("diagonal blocks meet classes outside the parabolic")
    labels = {diag: 0}
    for met in sorted(set(fingerprints.values()) - {diag}, key=sorted):
        labels[met] = len(labels)
    out = np.zeros((nb, nb), dtype=np.int64)
    for (a, b), met in fingerprints.items():
        out[a, b] = labels[met]
    return out


def find_algebraic_isomorphisms(t1: IntersectionTensor, t2: IntersectionTensor) -> list:
    """All class bijections (fixing 0) carrying one tensor onto the other.

    Returned entries sigma satisfy t2.p[sigma[k], sigma[i], sigma[j]] ==
    t1.p[k, i, j] for all k, i, j.  Candidates are pruned by (valency,
    symmetric-or-not) fingerprints before the permutation search.
    """
    if t1.d != t2.d:
        raise ValueError("class counts differ")
    d = t1.d

    def fingerprint(t, i):
        return (t.eta[i], t.star[i] == i)

    candidates = []
    for i in range(1, d + 1):
        cand = [j for j in range(1, d + 1) if fingerprint(t2, j) == fingerprint(t1, i)]
        if not cand:
            return []
        candidates.append(cand)

    results = []
    sigma = [0] * (d + 1)
    used = [False] * (d + 1)

    def assign(i):
        if i > d:
            idx = np.array(sigma)
            if np.array_equal(t2.p[np.ix_(idx, idx, idx)], t1.p):
                results.append(tuple(sigma))
            return
        for j in candidates[i - 1]:
            if used[j]:
                continue
            used[j] = True
            sigma[i] = j
            assign(i + 1)
            used[j] = False
        sigma[i] = 0

    assign(1)
    return results


def thin_group_table(tensor: IntersectionTensor) -> np.ndarray:
    """Multiplication table of the classes of a thin scheme under complex product.

    table[i][j] is the unique class k with p[k][i][j] nonzero.  Raises
    NotThinError when some valency exceeds 1.
    """
    d = tensor.d
    for i in range(1, d + 1):
        if tensor.eta[i] != 1:
            raise NotThinError(f"class {i} has valency {tensor.eta[i]}")
    table = np.zeros((d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        for j in range(d + 1):
            ks = [k for k in range(d + 1) if tensor.p[k, i, j] != 0]
            assert len(ks) == 1, "thin complex product must be a single class"
            table[i, j] = ks[0]
    return table


def element_orders(table: np.ndarray) -> list:
    """Order of each element in a group multiplication table (identity = 0)."""
    m = table.shape[0]
    orders = []
    for g in range(m):
        acc, k = g, 1
        while acc != 0:
            acc = int(table[acc, g])
            k += 1
            assert k <= m, "not a group table"
        orders.append(k if g != 0 else 1)
    return orders


def dihedral8_witness(table: np.ndarray):
    """Generators (r, f) with r of order 4, f an involution, f r f = r^-1.

    Returns None when no such pair exists (then the order-8 table is not
    dihedral).
    """
    if table.shape[0] != 8:
        return None
    orders = element_orders(table)
    rotations = [g for g in range(8) if orders[g] == 4]
    flips = [g for g in range(8) if orders[g] == 2]
    for r in rotations:
        r_inv = int(table[int(table[r, r]), r])  # r^3
        for f in flips:
            if int(table[int(table[f, r]), f]) == r_inv:
                return r, f
    return None


@dataclass(frozen=True)
class ScrambledScheme:
    relation: np.ndarray
    vertex_perm: tuple
    class_perm: tuple


def scramble_scheme(relation: np.ndarray, d: int, seed: int) -> ScrambledScheme:
    """Deterministically permute vertices and relabel nonzero classes."""
    rng = np.random.default_rng(seed)
    n = relation.shape[0]
    vperm = rng.permutation(n)
    cperm = np.concatenate([[0], rng.permutation(np.arange(1, d + 1))])
    scrambled = cperm[relation[np.ix_(vperm, vperm)]]
    return ScrambledScheme(
        relation=scrambled,
        vertex_perm=tuple(int(v) for v in vperm),
        class_perm=tuple(int(c) for c in cperm),
    )


def srg_parameters(adjacency: np.ndarray):
    """Brute-force strongly-regular parameters (v, k, lam, mu), or None.

    Common-neighbor counts must be constant over adjacent pairs (lam) and
    over distinct non-adjacent pairs (mu); any deviation returns None.
    """
    adj = np.asarray(adjacency, dtype=bool)
    v = adj.shape[0]
    if (adj != adj.T).any() or np.diagonal(adj).any():
        return None
    degrees = adj.sum(axis=1)
    if v == 0 or degrees.min() != degrees.max():
        return None
    k = int(degrees[0])
    common = adj.astype(np.int64) @ adj.astype(np.int64)
    adjacent = adj
    nonadjacent = ~adj
    np.fill_diagonal(nonadjacent, False)
    if not adjacent.any() or not nonadjacent.any():
        return None
    lams = common[adjacent]
    mus = common[nonadjacent]
    if lams.min() != lams.max() or mus.min() != mus.max():
        return None
    return (v, k, int(lams[0]), int(mus[0]))
