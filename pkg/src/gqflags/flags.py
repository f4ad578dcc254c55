"""Flags of a quadrangle and the 7-class relation matrix on ordered flag pairs.

A flag is an incident (point, line) pair.  Two flags (p, L), (q, M) fall
into exactly one of eight classes:

  0  equal flags
  1  same point, different lines
  2  same line, different points
  3  p, q distinct and collinear on L
  4  p, q distinct and collinear on M
  5  p, q collinear on some third line
  6  L, M meet in a point other than p and q
  7  L, M disjoint and p, q not collinear

The classes are mutually exclusive, so the first-match decision tree in
:func:`classify_pair` is order-insensitive in outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .geometry import GqOrder, IncidenceStructure, dualize, point_graph, verify_gq
from .tables import DELTA


@dataclass(frozen=True)
class Flag:
    point: int
    line: int


@dataclass(frozen=True)
class FlagSchemeData:
    """Flag list plus the n x n matrix of relation indices 0..7."""

    flags: tuple
    relation: np.ndarray
    order: GqOrder

    @property
    def n(self) -> int:
        return len(self.flags)


def enumerate_flags(structure: IncidenceStructure) -> list:
    """All incident pairs, sorted by (point, line)."""
    return [Flag(p, l) for p, l in structure.sorted_incidence()]


def classify_pair(structure: IncidenceStructure, f1: Flag, f2: Flag) -> int:
    """Relation index 0..7 of the ordered flag pair (f1, f2)."""
    if (f1.point, f1.line) not in structure.incidence:
        raise ValueError(f"{f1} is not a flag")
    if (f2.point, f2.line) not in structure.incidence:
        raise ValueError(f"{f2} is not a flag")
    if f1 == f2:
        return 0
    if f1.point == f2.point:
        return 1
    if f1.line == f2.line:
        return 2
    incidence = structure.incidence
    if (f2.point, f1.line) in incidence:
        return 3
    if (f1.point, f2.line) in incidence:
        return 4
    lines_of_p = {l for p, l in incidence if p == f1.point}
    lines_of_q = {l for p, l in incidence if p == f2.point}
    if lines_of_p & lines_of_q:
        return 5
    points_on_l = {p for p, l in incidence if l == f1.line}
    points_on_m = {p for p, l in incidence if l == f2.line}
    if points_on_l & points_on_m:
        return 6
    return 7


def build_flag_scheme(structure: IncidenceStructure) -> FlagSchemeData:
    """Classify every ordered flag pair; the quadrangle must verify first."""
    order = verify_gq(structure)
    flags = enumerate_flags(structure)
    n = len(flags)
    assert n == order.num_flags

    pts = np.array([f.point for f in flags])
    lns = np.array([f.line for f in flags])
    on = structure.incidence_matrix()
    coll = point_graph(structure)
    lmeet = (on.T.astype(np.int32) @ on.astype(np.int32)) > 0
    np.fill_diagonal(lmeet, False)

    same_flag = np.eye(n, dtype=bool)
    same_point = pts[:, None] == pts[None, :]
    same_line = lns[:, None] == lns[None, :]
    q_on_l1 = on[pts[None, :], lns[:, None]]
    p_on_l2 = on[pts[:, None], lns[None, :]]
    collinear = coll[pts[:, None], pts[None, :]]
    lines_meet = lmeet[lns[:, None], lns[None, :]]

    relation = np.select(
        [same_flag, same_point, same_line, q_on_l1, p_on_l2, collinear, lines_meet],
        [0, 1, 2, 3, 4, 5, 6],
        default=7,
    ).astype(np.int64)

    # structural sanity: transpose permutes classes by the involution 3<->4
    assert (np.diagonal(relation) == 0).all()
    star = np.array([0, 1, 2, 4, 3, 5, 6, 7])
    assert np.array_equal(relation.T, star[relation])
    return FlagSchemeData(flags=tuple(flags), relation=relation, order=order)


@dataclass(frozen=True)
class DualityReport:
    ok: bool
    counterexample: tuple = None


def check_duality_map(structure: IncidenceStructure) -> DualityReport:
    """Confirm that flag transposition carries each class to its dual class.

    Builds the scheme on the structure and on its dual, maps flag (p, L) to
    (L, p), and checks the class index transforms by 1<->2, 3<->4, 5<->6
    with 7 fixed.  Returns the first counterexample on failure.
    """
    data = build_flag_scheme(structure)
    dual_data = build_flag_scheme(dualize(structure))
    dual_index = {(f.point, f.line): i for i, f in enumerate(dual_data.flags)}
    phi = np.array([dual_index[(f.line, f.point)] for f in data.flags])
    delta = np.array(DELTA)
    mapped = dual_data.relation[np.ix_(phi, phi)]
    expected = delta[data.relation]
    if np.array_equal(mapped, expected):
        return DualityReport(ok=True)
    x, y = (int(v) for v in np.argwhere(mapped != expected)[0])
    return DualityReport(ok=False, counterexample=(x, y))


def save_scheme_file(path, relation: np.ndarray, d: int, flags=None) -> None:
    """Write the plain-text scheme matrix file.

    Line 1 is ``n d``; when the flag list is known it follows as n
    ``point line`` lines; then come the n matrix rows.
    """
    relation = np.asarray(relation)
    n = relation.shape[0]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{n} {d}\n")
        if flags is not None:
            for f in flags:
                fh.write(f"{f.point} {f.line}\n")
        for row in relation:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def load_scheme_file(path):
    """Read a scheme matrix file; returns (relation, d, flags-or-None)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if len(tokens) < 2:
        raise ParseError(f"{path}: missing 'n d' header")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise ParseError(f"{path}: non-integer token: {exc}") from exc
    n, d = values[0], values[1]
    if n < 1 or d < 1:
        raise ParseError(f"{path}: header must give positive n and d")
    body = values[2:]
    flags = None
    if len(body) == 2 * n + n * n:
        flags = tuple(Flag(body[2 * i], body[2 * i + 1]) for i in range(n))
        body = body[2 * n:]
    elif len(body) != n * n:
        raise ParseError(
            f"{path}: expected {n * n} matrix entries "
            f"(optionally preceded by {2 * n} flag tokens), found {len(body)}"
        )
    relation = np.array(body, dtype=np.int64).reshape(n, n)
    if relation.min() < 0 or relation.max() > d:
        raise ParseError(f"{path}: matrix entries must lie in 0..{d}")
    return relation, d, flags
