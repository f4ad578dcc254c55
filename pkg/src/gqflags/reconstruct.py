"""Rebuilding a generalized quadrangle from anonymized scheme data.

Two procedures: from a 7-class scheme whose intersection numbers match the
closed-form table at some (s, t), points and lines reappear as the
equivalence classes of {0,1} and {0,2}; from the 4-class symmetric fusion
at s = t, the maximal cliques of the first basis graph split into two
families by 2-coloring their intersection graph, and those families are the
points and lines.  A level decomposition around a base vertex is rebuilt as
an independent certificate of the 4-class procedure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CoverViolationError,
    GqAxiomFailureError,
    GqViolation,
    LevelMismatchError,
    NoIsomorphismError,
    NotBipartiteError,
    NotParabolicError,
    ParameterMismatchError,
)
from .geometry import GqOrder, IncidenceStructure, verify_gq
from .schemes import find_algebraic_isomorphisms, verify_scheme
from .tables import fused_tensor_from_polys, tensor_from_polys


@dataclass(frozen=True)
class CliqueCover:
    """Maximal cliques of a basis graph, with the two cliques through each vertex."""

    cliques: tuple
    vertex_to_cliques: tuple


@dataclass(frozen=True)
class LevelDecomposition:
    """Vertex strata at scheme-distance 0..4 from a base vertex."""

    base: int
    levels: tuple

    @property
    def sizes(self) -> tuple:
        return tuple(len(level) for level in self.levels)


@dataclass(frozen=True)
class FourClassReconstruction:
    structure: IncidenceStructure
    order: GqOrder
    s: int
    cover: CliqueCover
    point_clique_ids: tuple
    line_clique_ids: tuple
    vertex_point_clique: tuple
    vertex_line_clique: tuple
    levels: LevelDecomposition


def _candidate_orders(n: int):
    """All (s, t) with (s+1)(t+1)(st+1) = n, largest s first.

    A scrambled scheme cannot distinguish a quadrangle from its dual, so
    when both orientations match the table the s >= t one is preferred.
    """
    out = []
    s = 1
    while (s + 1) * 2 * (s + 1) <= n:
        t = 1
        while (s + 1) * (t + 1) * (s * t + 1) < n:
            t += 1
        if (s + 1) * (t + 1) * (s * t + 1) == n:
            out.append((s, t))
        s += 1
    return sorted(out, key=lambda st: -st[0])


def _union_blocks(relation: np.ndarray, classes) -> tuple:
    """Connected components of a class union, verified to be cliques of it."""
    n = relation.shape[0]
    member = np.isin(relation, list(classes))
    seen = np.zeros(n, dtype=bool)
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in np.flatnonzero(member[v]):
                if not seen[w]:
                    seen[w] = True
                    comp.append(int(w))
                    frontier.append(int(w))
        comp = sorted(comp)
        idx = np.array(comp)
        if not member[np.ix_(idx, idx)].all():
            raise NotParabolicError(
                f"classes {sorted(classes)} are not an equivalence relation "
                f"(block {comp[:4]}... is not internally closed)"
            )
        blocks.append(tuple(comp))
    return tuple(blocks)


def reconstruct_from_7class(relation: np.ndarray, d: int = 7) -> IncidenceStructure:
    """Rebuild the quadrangle from a canonical-labeled 7-class scheme.

    The tensor must equal the closed-form table at the (s, t) read off the
    valencies of classes 1 and 2; point blocks are the {0,1}-classes, line
    blocks the {0,2}-classes, incidence is nonempty intersection.
    """
    if d != 7:
        raise ValueError("the 7-class procedure needs d=7")
    tensor = verify_scheme(relation, 7)
    t, s = tensor.eta[1], tensor.eta[2]
    reference = tensor_from_polys(s, t)
    if not np.array_equal(tensor.p, reference.p):
        raise ParameterMismatchError(
            f"intersection numbers do not match the closed-form table at (s,t)=({s},{t})"
        )

    point_blocks = _union_blocks(relation, {0, 1})
    line_blocks = _union_blocks(relation, {0, 2})
    point_of = {}
    for b, block in enumerate(point_blocks):
        for v in block:
            point_of[v] = b
    line_of = {}
    for b, block in enumerate(line_blocks):
        for v in block:
            line_of[v] = b

    pairs = frozenset((point_of[v], line_of[v]) for v in range(relation.shape[0]))
    structure = IncidenceStructure(len(point_blocks), len(line_blocks), pairs)
    order = verify_gq(structure)
    assert (order.s, order.t) == (s, t)
    return structure


def relabel_to_canonical(relation: np.ndarray, d: int = 7) -> np.ndarray:
    """Relabel classes of a scrambled 7-class scheme to match the table.

    Tries every (s, t) consistent with the order and valency multiset and
    searches for a class bijection onto the closed-form tensor; the first
    match (in deterministic order) is applied.
    """
    if d != 7:
        raise NoIsomorphismError(f"canonical relabeling needs 7 classes, got {d}")
    tensor = verify_scheme(relation, 7)
    n = relation.shape[0]
    for s, t in _candidate_orders(n):
        reference = tensor_from_polys(s, t)
        if sorted(reference.eta) != sorted(tensor.eta):
            continue
        isos = find_algebraic_isomorphisms(reference, tensor)
        if isos:
            sigma = isos[0]
            inverse = np.zeros(8, dtype=np.int64)
            for canonical, scrambled in enumerate(sigma):
                inverse[scrambled] = canonical
            return inverse[relation]
    raise NoIsomorphismError("no relabeling matches the closed-form table")


def _infer_fused_s(n: int) -> int:
    s = 1
    while (s + 1) ** 2 * (s * s + 1) < n:
        s += 1
    if (s + 1) ** 2 * (s * s + 1) != n:
        raise ParameterMismatchError(f"no s with (s+1)^2(s^2+1) = {n}")
    return s


def _maximal_cliques(adj_sets) -> list:
    """Bron-Kerbosch with pivoting; deterministic order, cliques sorted."""
    cliques = []

    def expand(r, p, x):
        if not p and not x:
            cliques.append(frozenset(r))
            return
        pivot = max(sorted(p | x), key=lambda v: len(adj_sets[v] & p))
        for v in sorted(p - adj_sets[pivot]):
            expand(r | {v}, p & adj_sets[v], x & adj_sets[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(len(adj_sets))), set())
    return sorted(cliques, key=sorted)


def compute_clique_cover_4class(relation: np.ndarray) -> CliqueCover:
    """Maximal cliques of the class-1 graph, with the two-per-vertex cover check.

    Raises CoverViolationError (with a witness vertex) when some vertex does
    not lie in exactly two cliques, or when the clique count differs from
    2(s+1)(s^2+1) for the s determined by the order.
    """
    n = relation.shape[0]
    s = _infer_fused_s(n)
    adj_sets = [set(int(w) for w in np.flatnonzero(relation[v] == 1)) for v in range(n)]
    for v in range(n):
        for w in adj_sets[v]:
            if v not in adj_sets[w]:
                raise CoverViolationError(
                    f"class-1 graph is not symmetric at ({v},{w})", witness=v
                )
    cliques = _maximal_cliques(adj_sets)
    holder = [[] for _ in range(n)]
    for c, clique in enumerate(cliques):
        for v in clique:
            holder[v].append(c)
    for v in range(n):
        if len(holder[v]) != 2:
            raise CoverViolationError(
                f"vertex {v} lies in {len(holder[v])} maximal cliques, expected 2",
                witness=v,
            )
    expected = 2 * (s + 1) * (s * s + 1)
    if len(cliques) != expected:
        raise CoverViolationError(
            f"found {len(cliques)} maximal cliques, expected {expected}",
            witness=None,
        )
    return CliqueCover(
        cliques=tuple(cliques),
        vertex_to_cliques=tuple((h[0], h[1]) for h in holder),
    )


def canonicalize_4class(relation: np.ndarray) -> np.ndarray:
    """Relabel a scrambled 4-class fusion to match the closed-form table."""
    tensor = verify_scheme(relation, 4)
    s = _infer_fused_s(relation.shape[0])
    reference = fused_tensor_from_polys(s)
    isos = find_algebraic_isomorphisms(reference, tensor)
    if not isos:
        raise NoIsomorphismError("no relabeling matches the fused table")
    sigma = isos[0]
    inverse = np.zeros(5, dtype=np.int64)
    for canonical, scrambled in enumerate(sigma):
        inverse[scrambled] = canonical
    return inverse[relation]


def _two_color_cliques(cover: CliqueCover):
    """2-color the clique-intersection graph (cliques meeting share a vertex)."""
    nc = len(cover.cliques)
    neighbors = [set() for _ in range(nc)]
    for c1, c2 in cover.vertex_to_cliques:
        neighbors[c1].add(c2)
        neighbors[c2].add(c1)
    color = [-1] * nc
    for root in range(nc):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            c = queue.pop()
            for d_ in sorted(neighbors[c]):
                if color[d_] == -1:
                    color[d_] = 1 - color[c]
                    queue.append(d_)
                elif color[d_] == color[c]:
                    raise NotBipartiteError(
                        "clique-intersection graph contains an odd cycle",
                        witness=(c, d_),
                    )
    return color


def _level_decomposition(relation, cover, color, s, base=0) -> LevelDecomposition:
    members = cover.cliques
    v2c = cover.vertex_to_cliques

    def other(v, c):
        a, b = v2c[v]
        return b if a == c else a

    c1, c2 = v2c[base]
    p_home = c1 if color[c1] == 0 else c2
    l_home = c2 if p_home == c1 else c1

    lam0 = {base}
    lam1 = (set(members[p_home]) | set(members[l_home])) - lam0
    line_fam2 = sorted({other(x1, p_home) for x1 in members[p_home] if x1 != base})
    point_fam2 = sorted({other(y1, l_home) for y1 in members[l_home] if y1 != base})
    lam2 = set()
    for c in line_fam2 + point_fam2:
        lam2 |= set(members[c])
    lam2 -= lam1 | lam0

    point_fam3 = sorted({other(v, c) for c in line_fam2 for v in members[c] if v in lam2})
    line_fam3 = sorted({other(v, c) for c in point_fam2 for v in members[c] if v in lam2})
    lam3 = set()
    for c in point_fam3 + line_fam3:
        lam3 |= set(members[c])
    lam3 -= lam2 | lam1 | lam0

    line_fam4 = sorted({other(v, c) for c in point_fam3 for v in members[c] if v in lam3})
    point_fam4 = sorted({other(v, c) for c in line_fam3 for v in members[c] if v in lam3})
    lam4 = set()
    for c in line_fam4:
        lam4 |= set(members[c])
    lam4 -= lam3 | lam2 | lam1 | lam0
    lam4_from_points = set()
    for c in point_fam4:
        lam4_from_points |= set(members[c])
    lam4_from_points -= lam3 | lam2 | lam1 | lam0
    if lam4 != lam4_from_points:
        raise LevelMismatchError("line-side and point-side outer levels disagree")

    levels = (lam0, lam1, lam2, lam3, lam4)
    expected = (1, 2 * s, 2 * s**2, 2 * s**3, s**4)
    for i, level in enumerate(levels):
        if len(level) != expected[i]:
            raise LevelMismatchError(
                f"level {i} has {len(level)} vertices, expected {expected[i]}"
            )
        from_relation = set(int(v) for v in np.flatnonzero(relation[base] == i))
        if i == 0:
            from_relation = {base}
        if level != from_relation:
            raise LevelMismatchError(
                f"level {i} does not coincide with the class-{i} neighborhood"
            )
    return LevelDecomposition(base=base, levels=tuple(frozenset(l) for l in levels))


def reconstruct_from_4class(relation: np.ndarray, base: int = 0) -> FourClassReconstruction:
    """Rebuild a quadrangle of order (s, s) from a canonical 4-class fusion.

    Cliques are 2-colored into point and line families (the family of the
    lowest-id clique is called points), incidence is a shared vertex, the
    axioms are verified, and the level decomposition around ``base`` is
    checked against the scheme relations.
    """
    tensor = verify_scheme(relation, 4)
    n = relation.shape[0]
    s = _infer_fused_s(n)
    reference = fused_tensor_from_polys(s)
    if not np.array_equal(tensor.p, reference.p):
        raise ParameterMismatchError(
            f"intersection numbers do not match the fused table at s={s}"
        )
    cover = compute_clique_cover_4class(relation)
    color = _two_color_cliques(cover)

    point_ids = tuple(c for c in range(len(cover.cliques)) if color[c] == 0)
    line_ids = tuple(c for c in range(len(cover.cliques)) if color[c] == 1)
    point_index = {c: i for i, c in enumerate(point_ids)}
    line_index = {c: i for i, c in enumerate(line_ids)}

    vertex_point = []
    vertex_line = []
    pairs = set()
    for v in range(n):
        c1, c2 = cover.vertex_to_cliques[v]
        cp = c1 if color[c1] == 0 else c2
        cl = c2 if cp == c1 else c1
        if color[cp] != 0 or color[cl] != 1:
            raise NotBipartiteError(
                f"the two cliques through vertex {v} got one color", witness=v
            )
        vertex_point.append(cp)
        vertex_line.append(cl)
        pairs.add((point_index[cp], line_index[cl]))

    structure = IncidenceStructure(len(point_ids), len(line_ids), frozenset(pairs))
    try:
        order = verify_gq(structure)
    except GqViolation as exc:
        raise GqAxiomFailureError(f"rebuilt structure is not a quadrangle: {exc}") from exc
    if (order.s, order.t) != (s, s):
        raise GqAxiomFailureError(
            f"rebuilt structure has order ({order.s},{order.t}), expected ({s},{s})"
        )

    levels = _level_decomposition(relation, cover, color, s, base=base)
    return FourClassReconstruction(
        structure=structure,
        order=order,
        s=s,
        cover=cover,
        point_clique_ids=point_ids,
        line_clique_ids=line_ids,
        vertex_point_clique=tuple(vertex_point),
        vertex_line_clique=tuple(vertex_line),
        levels=levels,
    )


@dataclass(frozen=True)
class QmReport:
    ok: bool
    antiflags_checked: int = 0
    outer_pairs_checked: int = 0
    witness: tuple = None
    detail: str = ""


def check_unique_qm(
    relation: np.ndarray,
    recon: FourClassReconstruction,
    structure: IncidenceStructure = None,
) -> QmReport:
    """Certify the unique-connecting-flag property on the reconstruction.

    For every non-incident (point, line) pair there must be exactly one
    (point, line) pair joining them; additionally, for every vertex pair in
    the outer class 4, the two class-3/class-1 middlemen must split one
    into the line clique and one into the point clique of the target.
    Returns the first counterexample instead of raising.
    """
    s = structure if structure is not None else recon.structure
    p2l = s.point_to_lines()
    l2p = s.line_to_points()
    on_line = [set(pts) for pts in l2p]

    antiflags = 0
    for p in range(s.num_points):
        lines_of_p = set(p2l[p])
        for l in range(s.num_lines):
            if l in lines_of_p:
                continue
            antiflags += 1
            found = [
                (q, m)
                for m in p2l[p]
                for q in l2p[m]
                if q != p and q in on_line[l]
            ]
            if len(found) != 1:
                return QmReport(
                    ok=False,
                    antiflags_checked=antiflags,
                    witness=(p, l),
                    detail=f"anti-flag ({p},{l}) has {len(found)} connecting pairs",
                )

    outer = 0
    cliques = recon.cover.cliques
    for x in range(relation.shape[0]):
        row3 = relation[x] == 3
        for y in np.flatnonzero(relation[x] == 4):
            outer += 1
            middle = np.flatnonzero(row3 & (relation[:, y] == 1))
            in_line = [z for z in middle if z in cliques[recon.vertex_line_clique[y]]]
            in_point = [z for z in middle if z in cliques[recon.vertex_point_clique[y]]]
            if len(middle) != 2 or len(in_line) != 1 or len(in_point) != 1:
                return QmReport(
                    ok=False,
                    antiflags_checked=antiflags,
                    outer_pairs_checked=outer,
                    witness=(int(x), int(y)),
                    detail=(
                        f"outer pair ({x},{y}) has middlemen {sorted(int(z) for z in middle)}"
                        f" with line/point split {len(in_line)}/{len(in_point)}"
                    ),
                )
    return QmReport(ok=True, antiflags_checked=antiflags, outer_pairs_checked=outer)
