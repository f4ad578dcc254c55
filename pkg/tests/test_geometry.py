import json
from pathlib import Path

import numpy as np
import pytest

from gqflags import (
    CompositeParameterError,
    Gq1Violation,
    Gq3Violation,
    GqViolation,
    IncidenceStructure,
    ParseError,
    build_grid,
    build_symplectic,
    dualize,
    load_structure,
    point_graph,
    save_structure,
    srg_parameters,
    verify_gq,
)

DATA = Path(__file__).parent / "data"


def brute_force_srg(adj):
    """Independent oracle: triple-loop common-neighbor counts."""
    n = adj.shape[0]
    degs = {sum(bool(adj[v][w]) for w in range(n)) for v in range(n)}
    if len(degs) != 1:
        return None
    lams, mus = set(), set()
    for v in range(n):
        for w in range(n):
            if v == w:
                continue
            common = sum(1 for z in range(n) if adj[v][z] and adj[w][z])
            (lams if adj[v][w] else mus).add(common)
    if len(lams) != 1 or len(mus) != 1:
        return None
    return (n, degs.pop(), lams.pop(), mus.pop())


def test_grid_counts():
    g = build_grid(2)
    assert g.num_points == 9 and g.num_lines == 6
    assert verify_gq(g) == verify_gq(g)
    assert (verify_gq(g).s, verify_gq(g).t) == (2, 1)
    assert g.num_points == (2 + 1) * (2 * 1 + 1)

    g1 = build_grid(1)
    assert g1.num_points == 4 and g1.num_lines == 4
    assert (verify_gq(g1).s, verify_gq(g1).t) == (1, 1)

    g3 = build_grid(3)
    assert g3.num_points == 16 and g3.num_lines == 8


def test_symplectic_counts():
    w2 = build_symplectic(2)
    assert w2.num_points == 15 and w2.num_lines == 15
    assert (verify_gq(w2).s, verify_gq(w2).t) == (2, 2)

    w3 = build_symplectic(3)
    assert w3.num_points == 40 and w3.num_lines == 40
    assert (verify_gq(w3).s, verify_gq(w3).t) == (3, 3)

    with pytest.raises(CompositeParameterError):
        build_symplectic(4)
    with pytest.raises(CompositeParameterError):
        build_symplectic(1)


def test_dualize():
    g = build_grid(2)
    d = dualize(g)
    assert (verify_gq(d).s, verify_gq(d).t) == (1, 2)
    assert d.num_points == 6 and d.num_lines == 9
    assert dualize(d) == g

    w = build_symplectic(2)
    dw = dualize(w)
    assert (verify_gq(dw).s, verify_gq(dw).t) == (2, 2)
    assert dw.num_points == 15 and dw.num_lines == 15


def test_verify_gq_catches_deletion():
    w = build_symplectic(2)
    pair = sorted(w.incidence)[7]
    broken = IncidenceStructure(
        w.num_points, w.num_lines, frozenset(w.incidence - {pair})
    )
    with pytest.raises((Gq1Violation, Gq3Violation)) as err:
        verify_gq(broken)
    assert err.value.witness is not None


def test_verify_gq_rejects_double_line():
    # two lines through the same two points
    pairs = {(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 1)}
    bad = IncidenceStructure(3, 2, frozenset(pairs))
    with pytest.raises(GqViolation):
        verify_gq(bad)


def test_point_graph_parameters():
    # strongly regular with ((s+1)(st+1), s(t+1), s-1, t+1), via brute force
    for structure, s, t in [
        (build_symplectic(2), 2, 2),
        (build_grid(2), 2, 1),
        (build_grid(1), 1, 1),
    ]:
        adj = point_graph(structure)
        expected = ((s + 1) * (s * t + 1), s * (t + 1), s - 1, t + 1)
        assert brute_force_srg(adj) == expected
        assert srg_parameters(adj) == expected
    # the (1,1) case is the 4-cycle
    adj = point_graph(build_grid(1))
    assert adj.sum() == 8


def test_structure_roundtrip(tmp_path):
    g = build_grid(2)
    path = tmp_path / "grid2.json"
    save_structure(g, path)
    assert load_structure(path) == g
    # pairs are sorted lexicographically on save
    payload = json.loads(path.read_text())
    assert payload["incidence"] == sorted(payload["incidence"])


def test_load_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_structure(path)
    path.write_text(json.dumps({"num_points": 2, "num_lines": 1}))
    with pytest.raises(ParseError):
        load_structure(path)
    path.write_text(
        json.dumps({"num_points": 2, "num_lines": 1, "incidence": [[0, 0], [0, 0]]})
    )
    with pytest.raises(ParseError):
        load_structure(path)
    path.write_text(
        json.dumps({"num_points": 2, "num_lines": 1, "incidence": [[5, 0]]})
    )
    with pytest.raises(ParseError):
        load_structure(path)


def test_handwritten_gq22_fixture():
    # independent duad/syntheme model of the unique GQ(2,2)
    structure = load_structure(DATA / "gq22_duads.json")
    order = verify_gq(structure)
    assert (order.s, order.t) == (2, 2)
    assert srg_parameters(point_graph(structure)) == (15, 6, 1, 3)


def test_counting_formulas_hold():
    for structure in [build_grid(4), dualize(build_grid(3)), build_symplectic(3)]:
        order = verify_gq(structure)
        s, t = order.s, order.t
        assert structure.num_points == (s + 1) * (s * t + 1)
        assert structure.num_lines == (t + 1) * (s * t + 1)
