"""Finite generalized quadrangles: construction, axiom checking, duality, I/O.

An incidence structure is kept as a plain set of (point, line) index pairs.
A generalized quadrangle of order (s, t) has s+1 points per line, t+1 lines
per point, and for every non-incident point/line pair a unique connecting
flag path (the three axioms checked by :func:`verify_gq`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    CompositeParameterError,
    Gq1Violation,
    Gq2Violation,
    Gq3Violation,
    ParseError,
)


@dataclass(frozen=True)
class GqOrder:
    """Order (s, t): lines carry s+1 points, points lie on t+1 lines."""

    s: int
    t: int

    @property
    def num_points(self) -> int:
        return (self.s + 1) * (self.s * self.t + 1)

    @property
    def num_lines(self) -> int:
        return (self.t + 1) * (self.s * self.t + 1)

    @property
    def num_flags(self) -> int:
        return (self.s + 1) * (self.t + 1) * (self.s * self.t + 1)


@dataclass(frozen=True)
class IncidenceStructure:
    """A finite point/line incidence structure with dense 0-based indices.

    Labels are cosmetic only; all algorithms work on indices.
    """

    num_points: int
    num_lines: int
    incidence: frozenset
    point_labels: tuple = None
    line_labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "incidence", frozenset(self.incidence))
        for p, l in self.incidence:
            if not (0 <= p < self.num_points and 0 <= l < self.num_lines):
                raise ValueError(f"incidence pair ({p},{l}) out of range")
        if self.point_labels is not None and len(self.point_labels) != self.num_points:
            raise ValueError("point_labels length mismatch")
        if self.line_labels is not None and len(self.line_labels) != self.num_lines:
            raise ValueError("line_labels length mismatch")

    def sorted_incidence(self):
        return sorted(self.incidence)

    def point_to_lines(self):
        """Lists of lines through each point, sorted."""
        out = [[] for _ in range(self.num_points)]
        for p, l in self.sorted_incidence():
            out[p].append(l)
        return out

    def line_to_points(self):
        """Lists of points on each line, sorted."""
        out = [[] for _ in range(self.num_lines)]
        for p, l in self.sorted_incidence():
            out[l].append(p)
        return out

    def incidence_matrix(self) -> np.ndarray:
        """Boolean num_points x num_lines matrix."""
        m = np.zeros((self.num_points, self.num_lines), dtype=bool)
        for p, l in self.incidence:
            m[p, l] = True
        return m


def build_grid(s: int) -> IncidenceStructure:
    """The (s+1) x (s+1) grid: points of a square array, lines = rows and columns.

    This is the generic quadrangle of order (s, 1).
    """
    if s < 1:
        raise ValueError("grid parameter must be >= 1")
    m = s + 1
    pairs = set()
    for i in range(m):
        for j in range(m):
            p = i * m + j
            pairs.add((p, i))        # row line i
            pairs.add((p, m + j))    # column line j
    return IncidenceStructure(m * m, 2 * m, frozenset(pairs))


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def build_symplectic(q: int) -> IncidenceStructure:
    """The symplectic quadrangle of order (q, q) over the prime field F_q.

    Points are the projective points of 3-space over F_q (all of which are
    isotropic for the alternating form x0*y1 - x1*y0 + x2*y3 - x3*y2), lines
    are the totally isotropic projective lines.  Prime q only: no extension
    field arithmetic.
    """
    if not _is_prime(q):
        raise CompositeParameterError(f"symplectic construction needs a prime, got {q}")

    # Projective points: normalize so the first nonzero coordinate is 1.
    points = []
    index_of = {}
    for a in range(q ** 4):
        v = (a // q ** 3 % q, a // q ** 2 % q, a // q % q, a % q)
        if v == (0, 0, 0, 0):
            continue
        lead = next(c for c in v if c != 0)
        if lead != 1:
            continue
        index_of[v] = len(points)
        points.append(v)
    assert len(points) == (q * q + 1) * (q + 1)

    def form(u, v):
        return (u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]) % q

    def normalize(v):
        if all(c == 0 for c in v):
            return None
        lead = next(c for c in v if c != 0)
        inv = pow(lead, -1, q)
        return tuple(c * inv % q for c in v)

    # Totally isotropic lines = spans of perpendicular point pairs.
    lines = set()
    npts = len(points)
    for a in range(npts):
        u = points[a]
        for b in range(a + 1, npts):
            v = points[b]
            if form(u, v) != 0:
                continue
            members = {normalize(v)}
            for lam in range(q):
                members.add(normalize(tuple((u[i] + lam * v[i]) % q for i in range(4))))
            lines.add(frozenset(index_of[w] for w in members))
    lines = sorted(lines, key=sorted)
    assert len(lines) == (q * q + 1) * (q + 1)

    pairs = frozenset((p, li) for li, line in enumerate(lines) for p in line)
    return IncidenceStructure(npts, len(lines), pairs)


def dualize(structure: IncidenceStructure) -> IncidenceStructure:
    """Swap points and lines; a quadrangle of order (s, t) becomes one of order (t, s)."""
    return IncidenceStructure(
        structure.num_lines,
        structure.num_points,
        frozenset((l, p) for p, l in structure.incidence),
        point_labels=structure.line_labels,
        line_labels=structure.point_labels,
    )


def verify_gq(structure: IncidenceStructure) -> GqOrder:
    """Check the three quadrangle axioms and return the order (s, t).

    Axioms are checked in order, each raising with a minimal witness:
    constant point degree and no repeated lines through two points (first
    axiom), the dual conditions (second), and for every anti-flag (p, L)
    exactly one incident pair (q, M) with p on M and q on both M and L
    (third).  Iteration order over sorted indices keeps witnesses
    deterministic.
    """
    p2l = structure.point_to_lines()
    l2p = structure.line_to_points()

    if structure.num_points == 0 or structure.num_lines == 0:
        raise Gq1Violation("empty structure", witness=None)

    # GQ1: constant point degree >= 2; two points on at most one common line.
    deg = len(p2l[0])
    for p, lines in enumerate(p2l):
        if len(lines) != deg:
            raise Gq1Violation(
                f"points 0 and {p} lie on {deg} and {len(lines)} lines",
                witness=(0, p),
            )
    if deg < 2:
        raise Gq1Violation(f"every point lies on only {deg} line(s)", witness=(0, 0))
    seen_pairs = {}
    for l, pts in enumerate(l2p):
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                key = (pts[a], pts[b])
                if key in seen_pairs:
                    raise Gq1Violation(
                        f"points {key} lie on lines {seen_pairs[key]} and {l}",
                        witness=key,
                    )
                seen_pairs[key] = l

    # GQ2: constant line size >= 2; two lines through at most one common point.
    size = len(l2p[0])
    for l, pts in enumerate(l2p):
        if len(pts) != size:
            raise Gq2Violation(
                f"lines 0 and {l} carry {size} and {len(pts)} points",
                witness=(0, l),
            )
    if size < 2:
        raise Gq2Violation(f"every line carries only {size} point(s)", witness=(0, 0))
    seen_lines = {}
    for p, lines in enumerate(p2l):
        for a in range(len(lines)):
            for b in range(a + 1, len(lines)):
                key = (lines[a], lines[b])
                if key in seen_lines:
                    raise Gq2Violation(
                        f"lines {key} meet in points {seen_lines[key]} and {p}",
                        witness=key,
                    )
                seen_lines[key] = p

    s = size - 1
    t = deg - 1

    # GQ3: unique connecting flag for each anti-flag.
    on_line = [set(pts) for pts in l2p]
    collinear_with = [set() for _ in range(structure.num_points)]
    for pts in l2p:
        for a in pts:
            collinear_with[a].update(pts)
    for p in range(structure.num_points):
        lines_of_p = set(p2l[p])
        for l in range(structure.num_lines):
            if l in lines_of_p:
                continue
            hits = sum(1 for q in l2p[l] if q != p and q in collinear_with[p])
            if hits != 1:
                raise Gq3Violation(
                    f"anti-flag (point {p}, line {l}) has {hits} connecting flags",
                    witness=(p, l),
                )

    order = GqOrder(s, t)
    # Counting consequence of the axioms; a failure here indicates a checker bug.
    assert structure.num_points == order.num_points
    assert structure.num_lines == order.num_lines
    return order


def point_graph(structure: IncidenceStructure) -> np.ndarray:
    """Collinearity graph on points as a boolean adjacency matrix."""
    adj = np.zeros((structure.num_points, structure.num_points), dtype=bool)
    for pts in structure.line_to_points():
        for a in pts:
            for b in pts:
                if a != b:
                    adj[a, b] = True
    return adj


def save_structure(structure: IncidenceStructure, path) -> None:
    """Write the JSON structure file (incidence pairs sorted lexicographically)."""
    payload = {
        "num_points": structure.num_points,
        "num_lines": structure.num_lines,
        "incidence": [list(pair) for pair in structure.sorted_incidence()],
    }
    if structure.point_labels is not None:
        payload["point_labels"] = list(structure.point_labels)
    if structure.line_labels is not None:
        payload["line_labels"] = list(structure.line_labels)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_structure(path) -> IncidenceStructure:
    """Read a JSON structure file; raises ParseError with a field diagnostic."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(payload, dict):
        raise ParseError(f"{path}: top-level value must be an object")
    for key in ("num_points", "num_lines", "incidence"):
        if key not in payload:
            raise ParseError(f"{path}: missing field '{key}'")
    np_, nl = payload["num_points"], payload["num_lines"]
    if not (isinstance(np_, int) and isinstance(nl, int) and np_ >= 0 and nl >= 0):
        raise ParseError(f"{path}: num_points/num_lines must be non-negative integers")
    pairs = []
    for entry in payload["incidence"]:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(c, int) for c in entry)
        ):
            raise ParseError(f"{path}: incidence entry {entry!r} is not a [point, line] pair")
        p, l = entry
        if not (0 <= p < np_ and 0 <= l < nl):
            raise ParseError(f"{path}: incidence pair [{p}, {l}] out of range")
        pairs.append((p, l))
    if len(set(pairs)) != len(pairs):
        raise ParseError(f"{path}: duplicate incidence pairs")
    labels = {}
    for key in ("point_labels", "line_labels"):
        if key in payload:
            labels[key] = tuple(str(x) for x in payload[key])
    try:
        return IncidenceStructure(np_, nl, frozenset(pairs), **labels)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
