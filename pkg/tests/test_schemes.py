import numpy as np
import pytest

from gqflags import (
    MissingClassError,
    NotASchemeError,
    NotThinError,
    build_flag_scheme,
    build_grid,
    build_symplectic,
    dihedral8_witness,
    dualize,
    element_orders,
    find_algebraic_isomorphisms,
    find_parabolics,
    point_graph,
    quotient_scheme,
    scramble_scheme,
    srg_parameters,
    tensor_from_polys,
    thin_group_table,
    verify_scheme,
)
from gqflags.schemes import check_tensor_identities
from gqflags.tables import DELTA


def w2_data():
    return build_flag_scheme(build_symplectic(2))


def test_tensor_values():
    tensor = verify_scheme(w2_data().relation, 7)
    assert tensor.p[1, 2, 3] == 2
    assert tensor.p[7, 7, 7] == 5
    assert tensor.eta == (1, 2, 2, 4, 4, 8, 8, 16)
    assert tensor.star == (0, 1, 2, 4, 3, 5, 6, 7)
    assert tensor.order == 45
    # noncommutativity witness
    assert tensor.p[1, 4, 5] != tensor.p[1, 5, 4]


def test_identities_pass_post_hoc():
    tensor = verify_scheme(build_flag_scheme(build_grid(3)).relation, 7)
    check_tensor_identities(tensor)
    for k in range(8):
        for i in range(8):
            assert tensor.p[k, i, :].sum() == tensor.eta[i]


def test_mutation_is_caught():
    data = w2_data()
    corrupted = data.relation.copy()
    x, y = 0, 7
    old = corrupted[x, y]
    corrupted[x, y] = (old % 7) + 1 if (old % 7) + 1 != old else 5
    with pytest.raises(NotASchemeError) as err:
        verify_scheme(corrupted, 7)
    assert err.value.witness is not None


def test_missing_class():
    relation = np.array([[0, 1], [1, 0]])
    with pytest.raises(MissingClassError):
        verify_scheme(relation, 2)


def test_find_parabolics_w2():
    data = w2_data()
    tensor = verify_scheme(data.relation, 7)
    paras = find_parabolics(tensor, data.relation)
    classes = [frozenset(p.classes) for p in paras]
    assert frozenset({0, 1}) in classes
    assert frozenset({0, 2}) in classes
    # the exhaustive search finds exactly these plus the trivial pair
    assert sorted(sorted(c) for c in classes) == [
        [0],
        [0, 1],
        [0, 1, 2, 3, 4, 5, 6, 7],
        [0, 2],
    ]
    e1 = next(p for p in paras if p.classes == frozenset({0, 1}))
    assert not e1.is_trivial
    assert len(e1.blocks) == 15 and all(len(b) == 3 for b in e1.blocks)
    full = next(p for p in paras if len(p.classes) == 8)
    assert full.is_trivial


def test_quotient_modulo_point_parabolic():
    data = w2_data()
    tensor = verify_scheme(data.relation, 7)
    paras = find_parabolics(tensor, data.relation)
    e1 = next(p for p in paras if p.classes == frozenset({0, 1}))
    q = quotient_scheme(data.relation, e1)
    assert q.shape == (15, 15)
    assert srg_parameters(q == 1) == (15, 6, 1, 3)
    # blocks are in point order, so the quotient graph IS the point graph
    assert np.array_equal(q == 1, point_graph(build_symplectic(2)))
    # the quotient is itself a 2-class scheme
    qt = verify_scheme(q, 2)
    assert qt.eta == (1, 6, 8)

    e2 = next(p for p in paras if p.classes == frozenset({0, 2}))
    q2 = quotient_scheme(data.relation, e2)
    # point graph of the dual quadrangle (same parameters: self-dual order)
    assert srg_parameters(q2 == 1) == (15, 6, 1, 3)
    dual_pg = point_graph(dualize(build_symplectic(2)))
    assert srg_parameters(dual_pg) == srg_parameters(q2 == 1)
    assert np.array_equal(q2 == 1, dual_pg)


def test_quotient_by_identity_parabolic():
    data = build_flag_scheme(build_grid(2))
    tensor = verify_scheme(data.relation, 7)
    paras = find_parabolics(tensor, data.relation)
    e0 = next(p for p in paras if p.classes == frozenset({0}))
    q = quotient_scheme(data.relation, e0)
    assert np.array_equal(q, data.relation)


def test_algebraic_isomorphisms():
    t_w2 = verify_scheme(w2_data().relation, 7)
    autos = find_algebraic_isomorphisms(t_w2, t_w2)
    identity = tuple(range(8))
    assert identity in autos
    # closed under inverse and composition (group property)
    perms = set(autos)
    for sigma in autos:
        inverse = [0] * 8
        for a, b in enumerate(sigma):
            inverse[b] = a
        assert tuple(inverse) in perms
        for tau in autos:
            assert tuple(tau[sigma[i]] for i in range(8)) in perms

    g = build_grid(2)
    t1 = verify_scheme(build_flag_scheme(g).relation, 7)
    t2 = verify_scheme(build_flag_scheme(dualize(g)).relation, 7)
    assert tuple(DELTA) in find_algebraic_isomorphisms(t1, t2)

    t_w3 = verify_scheme(build_flag_scheme(build_symplectic(3)).relation, 7)
    assert find_algebraic_isomorphisms(t_w2, t_w3) == []


def test_thin_group_is_dihedral():
    data = build_flag_scheme(build_grid(1))
    tensor = verify_scheme(data.relation, 7)
    assert tensor.eta == (1,) * 8
    table = thin_group_table(tensor)
    orders = element_orders(table)
    assert orders[0] == 1
    assert orders[1] == 2 and orders[3] == 4
    # class 1 conjugates class 3 to its inverse, which is class 4
    r1r3 = table[1, 3]
    assert table[r1r3, 1] == 4
    assert table[3, 4] == 0  # class 4 is the inverse of class 3
    assert sorted(orders) == [1, 2, 2, 2, 2, 2, 4, 4]
    assert dihedral8_witness(table) is not None


def test_thin_rejects_fat_scheme():
    tensor = verify_scheme(w2_data().relation, 7)
    with pytest.raises(NotThinError):
        thin_group_table(tensor)


def test_one_point_scheme():
    relation = np.zeros((1, 1), dtype=np.int64)
    tensor = verify_scheme(relation, 0)
    table = thin_group_table(tensor)
    assert table.shape == (1, 1) and table[0, 0] == 0


def test_srg_parameters_conventions():
    # 4-cycle: complete bipartite K_{2,2}
    cycle = np.zeros((4, 4), dtype=bool)
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 0)]:
        cycle[a, b] = cycle[b, a] = True
    assert srg_parameters(cycle) == (4, 2, 0, 2)
    # path graph is not strongly regular
    path = np.zeros((4, 4), dtype=bool)
    for a, b in [(0, 1), (1, 2), (2, 3)]:
        path[a, b] = path[b, a] = True
    assert srg_parameters(path) is None
    # complete graph has no non-adjacent pairs: no (lam, mu) by our convention
    complete = ~np.eye(3, dtype=bool)
    assert srg_parameters(complete) is None


def test_scramble_deterministic():
    data = build_flag_scheme(build_grid(2))
    a = scramble_scheme(data.relation, 7, seed=5)
    b = scramble_scheme(data.relation, 7, seed=5)
    c = scramble_scheme(data.relation, 7, seed=6)
    assert np.array_equal(a.relation, b.relation)
    assert a.vertex_perm == b.vertex_perm and a.class_perm == b.class_perm
    assert not np.array_equal(a.relation, c.relation)
    assert a.class_perm[0] == 0
    # a scrambled scheme is still a scheme with permuted valencies
    t0 = verify_scheme(data.relation, 7)
    t1 = verify_scheme(a.relation, 7)
    assert sorted(t0.eta) == sorted(t1.eta)
