"""Closed-form intersection-number tables and their symmetry group.

Every intersection number of the 7-class flag scheme of a quadrangle of
order (s, t) is a fixed integer polynomial in s and t; this module stores
the complete table, the analogous table for the 4-class symmetric fusion
at s = t, and the order-12 symmetry group acting on index triplets that
lets the whole table be generated from 44 base entries.

Entries are hard-coded here and cross-validated elsewhere against tensors
computed from concrete quadrangles; a disagreement fails the self-test
rather than silently trusting either side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IdentityFailureError, OrbitMismatchError, ScalingMismatchError
from .polynomials import ONE, S, T, ZERO, BivariatePoly
from .schemes import IntersectionTensor

# transpose involution on class indices: only 3 and 4 are non-symmetric
STAR = (0, 1, 2, 4, 3, 5, 6, 7)
# point-line duality on class indices
DELTA = (0, 2, 1, 4, 3, 6, 5, 7)

_0 = ZERO
_1 = ONE

#: valencies of the 7-class flag scheme, index 0..7
ETA_POLYS = (
    _1,
    T,
    S,
    S * T,
    S * T,
    S * T * T,
    S * S * T,
    S * S * T * T,
)


def _class0_table():
    rows = []
    for i in range(8):
        rows.append([ETA_POLYS[i] if j == STAR[i] else _0 for j in range(8)])
    return rows


# Tables of p[k][i][j] for k = 1..7; row/column 0 follow the convention
# p[k][0][j] = [j == k], p[k][i][0] = [i == k].
_P_TABLES = {
    1: [
        [_0, _1, _0, _0, _0, _0, _0, _0],
        [_1, T - 1, _0, _0, _0, _0, _0, _0],
        [_0, _0, _0, S, _0, _0, _0, _0],
        [_0, _0, _0, _0, _0, S * T, _0, _0],
        [_0, _0, S, S * (T - 1), _0, _0, _0, _0],
        [_0, _0, _0, _0, S * T, S * T * (T - 1), _0, _0],
        [_0, _0, _0, _0, _0, _0, _0, S * S * T],
        [_0, _0, _0, _0, _0, _0, S * S * T, S * S * T * (T - 1)],
    ],
    2: [
        [_0, _0, _1, _0, _0, _0, _0, _0],
        [_0, _0, _0, _0, T, _0, _0, _0],
        [_1, _0, S - 1, _0, _0, _0, _0, _0],
        [_0, T, _0, _0, T * (S - 1), _0, _0, _0],
        [_0, _0, _0, _0, _0, _0, S * T, _0],
        [_0, _0, _0, _0, _0, _0, _0, S * T * T],
        [_0, _0, _0, S * T, _0, _0, S * T * (S - 1), _0],
        [_0, _0, _0, _0, _0, S * T * T, _0, S * T * T * (S - 1)],
    ],
    3: [
        [_0, _0, _0, _1, _0, _0, _0, _0],
        [_0, _0, _0, _0, _0, T, _0, _0],
        [_0, _1, _0, S - 1, _0, _0, _0, _0],
        [_1, T - 1, _0, _0, _0, T * (S - 1), _0, _0],
        [_0, _0, _0, _0, _0, _0, _0, S * T],
        [_0, _0, _0, _0, _0, _0, S * T, S * T * (T - 1)],
        [_0, _0, S, S * (T - 1), _0, _0, _0, S * T * (S - 1)],
        [_0, _0, _0, _0, S * T, S * T * (T - 1), S * T * (S - 1), S * T * (S - 1) * (T - 1)],
    ],
    4: [
        [_0, _0, _0, _0, _1, _0, _0, _0],
        [_0, _0, _1, _0, T - 1, _0, _0, _0],
        [_0, _0, _0, _0, _0, _0, S, _0],
        [_0, _0, _0, _0, _0, _0, _0, S * T],
        [_1, _0, S - 1, _0, _0, _0, S * (T - 1), _0],
        [_0, T, _0, _0, T * (S - 1), _0, _0, S * T * (T - 1)],
        [_0, _0, _0, _0, _0, S * T, _0, S * T * (S - 1)],
        [_0, _0, _0, S * T, _0, S * T * (T - 1), S * T * (S - 1), S * T * (S - 1) * (T - 1)],
    ],
    5: [
        [_0, _0, _0, _0, _0, _1, _0, _0],
        [_0, _0, _0, _1, _0, T - 1, _0, _0],
        [_0, _0, _0, _0, _0, _0, _0, S],
        [_0, _0, _0, _0, _0, _0, S, S * (T - 1)],
        [_0, _1, _0, S - 1, _0, _0, _0, S * (T - 1)],
        [_1, T - 1, _0, _0, _0, T * (S - 1), S * (T - 1), S * (T - 1) ** 2],
        [_0, _0, _0, _0, S, S * (T - 1), S * (S - 1), S * (S - 1) * (T - 1)],
        [_0, _0, S, S * (T - 1), S * (T - 1), S * (T - 1) ** 2,
         S * (S - 1) * (T - 1), S * (S - 1) * (T * T - T + 1)],
    ],
    6: [
        [_0, _0, _0, _0, _0, _0, _1, _0],
        [_0, _0, _0, _0, _0, _0, _0, T],
        [_0, _0, _0, _0, _1, _0, S - 1, _0],
        [_0, _0, _1, _0, T - 1, _0, _0, T * (S - 1)],
        [_0, _0, _0, _0, _0, T, _0, T * (S - 1)],
        [_0, _0, _0, T, _0, T * (T - 1), T * (S - 1), T * (S - 1) * (T - 1)],
        [_1, _0, S - 1, _0, _0, T * (S - 1), S * (T - 1), T * (S - 1) ** 2],
        [_0, T, _0, T * (S - 1), T * (S - 1), T * (S - 1) * (T - 1),
         T * (S - 1) ** 2, T * (T - 1) * (S * S - S + 1)],
    ],
    7: [
        [_0, _0, _0, _0, _0, _0, _0, _1],
        [_0, _0, _0, _0, _0, _0, _1, T - 1],
        [_0, _0, _0, _0, _0, _1, _0, S - 1],
        [_0, _0, _0, _1, _0, T - 1, S - 1, (S - 1) * (T - 1)],
        [_0, _0, _0, _0, _1, T - 1, S - 1, (S - 1) * (T - 1)],
        [_0, _0, _1, T - 1, T - 1, (T - 1) ** 2,
         (S - 1) * (T - 1), (S - 1) * (T * T - T + 1)],
        [_0, _1, _0, S - 1, S - 1, (S - 1) * (T - 1),
         (S - 1) ** 2, (S * S - S + 1) * (T - 1)],
        [_1, T - 1, S - 1, (S - 1) * (T - 1), (S - 1) * (T - 1),
         (S - 1) * (T * T - T + 1), (S * S - S + 1) * (T - 1),
         1 - S + S * S - T - S * S * T + T * T - S * T * T + S * S * T * T],
    ],
}
_P_TABLES[0] = _class0_table()

#: valencies of the 4-class fusion at s = t, index 0..4
FUSED_ETA_POLYS = (
    _1,
    2 * S,
    2 * S**2,
    2 * S**3,
    S**4,
)

_FUSED_P_TABLES = {
    0: [[FUSED_ETA_POLYS[i] if j == i else _0 for j in range(5)] for i in range(5)],
    1: [
        [_0, _1, _0, _0, _0],
        [_1, S - 1, S, _0, _0],
        [_0, S, S * (S - 1), S**2, _0],
        [_0, _0, S**2, S**2 * (S - 1), S**3],
        [_0, _0, _0, S**3, S**3 * (S - 1)],
    ],
    2: [
        [_0, _0, _1, _0, _0],
        [_0, _1, S - 1, S, _0],
        [_1, S - 1, _0, S * (S - 1), S**2],
        [_0, S, S * (S - 1), S**2, 2 * S**2 * (S - 1)],
        [_0, _0, S**2, 2 * S**2 * (S - 1), S**2 * (S - 1) ** 2],
    ],
    3: [
        [_0, _0, _0, _1, _0],
        [_0, _0, _1, S - 1, S],
        [_0, _1, S - 1, S, 2 * S * (S - 1)],
        [_1, S - 1, S, 4 * S * (S - 1), 2 * S * (S - 1) ** 2],
        [_0, S, 2 * S * (S - 1), 2 * S * (S - 1) ** 2, S * (S - 1) * (S * S - S + 1)],
    ],
    4: [
        [_0, _0, _0, _0, _1],
        [_0, _0, _0, BivariatePoly.const(2), 2 * (S - 1)],
        [_0, _0, BivariatePoly.const(2), 4 * (S - 1), 2 * (S - 1) ** 2],
        [_0, BivariatePoly.const(2), 4 * (S - 1), 4 * (S - 1) ** 2, 2 * (S - 1) * (S * S - S + 1)],
        [_1, 2 * (S - 1), 2 * (S - 1) ** 2, 2 * (S - 1) * (S * S - S + 1),
         S**4 - 2 * S**3 + 2 * S**2 - 2 * S + 1],
    ],
}

#: index partition defining the 4-class fusion
FUSION_BLOCKS = ((0,), (1, 2), (3, 4), (5, 6), (7,))


def eta_poly(i: int) -> BivariatePoly:
    """Valency of class i of the 7-class scheme as a polynomial in s, t."""
    return ETA_POLYS[i]


def p_poly(k: int, i: int, j: int) -> BivariatePoly:
    """Closed-form intersection number p[k][i][j] of the 7-class scheme."""
    return _P_TABLES[k][i][j]


def fused_eta_poly(i: int) -> BivariatePoly:
    """Valency of class i of the 4-class fusion, polynomial in s (t = s)."""
    return FUSED_ETA_POLYS[i]


def fused_p_poly(k: int, i: int, j: int) -> BivariatePoly:
    """Closed-form intersection number of the 4-class fusion, in s alone."""
    return _FUSED_P_TABLES[k][i][j]


def tensor_from_polys(s: int, t: int) -> IntersectionTensor:
    """Evaluate the full 7-class table at concrete (s, t) as a tensor."""
    p = np.zeros((8, 8, 8), dtype=np.int64)
    for k in range(8):
        for i in range(8):
            for j in range(8):
                p[k, i, j] = _P_TABLES[k][i][j].evaluate(s, t)
    eta = tuple(ETA_POLYS[i].evaluate(s, t) for i in range(8))
    return IntersectionTensor(d=7, p=p, eta=eta, star=STAR)


def fused_tensor_from_polys(s: int) -> IntersectionTensor:
    """Evaluate the 4-class fusion table at concrete s as a tensor."""
    p = np.zeros((5, 5, 5), dtype=np.int64)
    for k in range(5):
        for i in range(5):
            for j in range(5):
                p[k, i, j] = _FUSED_P_TABLES[k][i][j].evaluate(s, s)
    eta = tuple(FUSED_ETA_POLYS[i].evaluate(s, s) for i in range(5))
    return IntersectionTensor(d=4, p=p, eta=eta, star=(0, 1, 2, 3, 4))


# ---------------------------------------------------------------------------
# The order-12 group acting on index triplets (k i j), 1 <= k,i,j <= 7.
# Generators: I from the valency-weighted cyclic identity, S from the
# transpose identity, D from point-line duality.
# ---------------------------------------------------------------------------

GROUP_ELEMENTS = (
    "id", "I", "I2", "S", "IS", "I2S",
    "D", "ID", "I2D", "SD", "ISD", "I2SD",
)


def _apply_i(tr):
    k, i, j = tr
    return (STAR[i], j, STAR[k])


def _apply_s(tr):
    k, i, j = tr
    return (STAR[k], STAR[j], STAR[i])


def _apply_d(tr):
    k, i, j = tr
    return (DELTA[k], DELTA[i], DELTA[j])


_LETTER = {"I": _apply_i, "S": _apply_s, "D": _apply_d}


def _word_letters(element: str):
    if element == "id":
        return []
    letters = []
    pos = 0
    while pos < len(element):
        letter = element[pos]
        letters.append(letter)
        pos += 1
        if pos < len(element) and element[pos] == "2":
            letters.append(letter)
            pos += 1
    return letters


def triplet_apply(element: str, triplet) -> tuple:
    """Apply a group element (word in I, S, D; rightmost letter acts first)."""
    if element not in GROUP_ELEMENTS:
        raise ValueError(f"unknown group element {element!r}")
    k, i, j = triplet
    if not all(1 <= v <= 7 for v in (k, i, j)):
        raise ValueError("triplet components must be in 1..7")
    tr = (k, i, j)
    for letter in reversed(_word_letters(element)):
        tr = _LETTER[letter](tr)
    return tr


# For each element: how the intersection polynomial transports.  The entry
# (num, den, swap) means   eta_den(tr) * p(g(tr)) == eta_num(tr) * p(tr),
# where num/den pick a component of the (possibly dualized) source triplet
# and swap means p(tr) has its variables interchanged on the right side.
_SCALING = {
    "id": (None, None, False),
    "I": ("k", "i", False),
    "I2": ("k", "j", False),
    "S": (None, None, False),
    "IS": ("k", "j", False),
    "I2S": ("k", "i", False),
    "D": (None, None, True),
    "ID": ("kd", "id", True),
    "I2D": ("kd", "jd", True),
    "SD": (None, None, True),
    "ISD": ("kd", "jd", True),
    "I2SD": ("kd", "id", True),
}


def _component_eta(name: str, triplet) -> BivariatePoly:
    k, i, j = triplet
    index = {"k": k, "i": i, "j": j, "kd": DELTA[k], "id": DELTA[i], "jd": DELTA[j]}
    return ETA_POLYS[index[name]]


#: the 44 orbit representatives generating all 343 triplets under the group
REPRESENTATIVE_TRIPLETS = (
    (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 1, 5), (1, 1, 6), (1, 1, 7),
    (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 7),
    (1, 3, 3), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 3, 7),
    (1, 4, 3), (1, 4, 5), (1, 4, 6), (1, 4, 7),
    (1, 5, 5), (1, 5, 6), (1, 5, 7),
    (1, 6, 6), (1, 6, 7),
    (1, 7, 7),
    (3, 3, 3), (3, 3, 5), (3, 3, 6), (3, 3, 7),
    (3, 4, 4), (3, 4, 5), (3, 4, 7),
    (3, 5, 5), (3, 5, 6), (3, 5, 7),
    (3, 6, 5), (3, 6, 7),
    (3, 7, 7),
    (5, 5, 5), (5, 5, 6), (5, 5, 7),
    (5, 6, 7),
    (5, 7, 7),
    (7, 7, 7),
)


@dataclass(frozen=True)
class OrbitReport:
    num_orbits: int
    num_triplets: int
    num_checks: int


def verify_triplet_orbits() -> OrbitReport:
    """Check the triplet-group bookkeeping against the polynomial table.

    (a) the orbits of the 44 representatives are disjoint and tile all 343
    triplets; (b) for every triplet and every group element, the transported
    polynomial matches the prescribed valency scaling (cross-multiplied, so
    the comparison is an exact polynomial identity).
    """
    covered = {}
    for rep in REPRESENTATIVE_TRIPLETS:
        orbit = {triplet_apply(g, rep) for g in GROUP_ELEMENTS}
        for tr in orbit:
            if tr in covered and covered[tr] != rep:
                raise OrbitMismatchError(
                    f"triplet {tr} reached from both {covered[tr]} and {rep}"
                )
            covered[tr] = rep
    if len(covered) != 343:
        missing = [
            (k, i, j)
            for k in range(1, 8)
            for i in range(1, 8)
            for j in range(1, 8)
            if (k, i, j) not in covered
        ]
        raise OrbitMismatchError(f"orbits miss {len(missing)} triplets, e.g. {missing[:3]}")

    checks = 0
    for k in range(1, 8):
        for i in range(1, 8):
            for j in range(1, 8):
                tr = (k, i, j)
                base = p_poly(*tr)
                for g in GROUP_ELEMENTS:
                    image = triplet_apply(g, tr)
                    num, den, swap = _SCALING[g]
                    rhs = base.swap_vars() if swap else base
                    lhs = p_poly(*image)
                    if num is not None:
                        lhs = lhs * _component_eta(den, tr)
                        rhs = rhs * _component_eta(num, tr)
                    if lhs != rhs:
                        raise ScalingMismatchError(
                            f"transport of {tr} under {g} disagrees with the table",
                            element=g,
                            triplet=tr,
                        )
                    checks += 1
    return OrbitReport(
        num_orbits=len(REPRESENTATIVE_TRIPLETS), num_triplets=343, num_checks=checks
    )


@dataclass(frozen=True)
class IdentityReport:
    num_checks: int


def verify_identities() -> IdentityReport:
    """Exact polynomial sweep of the three standard identities over the table.

    Transpose symmetry p[k][i][j] = p[k*][j*][i*], the valency-weighted
    cyclic identities, and the row-sum identity sum_j p[k][i][j] = eta_i.
    """
    checks = 0
    for k in range(8):
        for i in range(8):
            row_sum = ZERO
            for j in range(8):
                a = p_poly(k, i, j)
                if a != p_poly(STAR[k], STAR[j], STAR[i]):
                    raise IdentityFailureError(
                        "transpose identity fails", equation="transpose", triple=(k, i, j)
                    )
                if ETA_POLYS[k] * a != ETA_POLYS[i] * p_poly(STAR[i], j, STAR[k]):
                    raise IdentityFailureError(
                        "first valency identity fails", equation="valency-1", triple=(k, i, j)
                    )
                if ETA_POLYS[k] * a != ETA_POLYS[j] * p_poly(STAR[j], STAR[k], i):
                    raise IdentityFailureError(
                        "second valency identity fails", equation="valency-2", triple=(k, i, j)
                    )
                row_sum = row_sum + a
                checks += 3
            if row_sum != ETA_POLYS[i]:
                raise IdentityFailureError(
                    "row-sum identity fails", equation="row-sum", triple=(k, i, -1)
                )
            checks += 1
    return IdentityReport(num_checks=checks)
