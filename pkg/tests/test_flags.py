import numpy as np
import pytest

from gqflags import (
    Flag,
    build_flag_scheme,
    build_grid,
    build_symplectic,
    check_duality_map,
    classify_pair,
    dualize,
    enumerate_flags,
    load_scheme_file,
    save_scheme_file,
    verify_gq,
)
from gqflags.errors import ParseError


def test_flag_counts():
    assert len(enumerate_flags(build_symplectic(2))) == 45
    assert len(enumerate_flags(build_grid(3))) == 32
    assert len(enumerate_flags(build_symplectic(3))) == 160
    assert len(enumerate_flags(build_grid(1))) == 8


def test_flags_sorted():
    flags = enumerate_flags(build_grid(2))
    assert flags == sorted(flags, key=lambda f: (f.point, f.line))


def test_classify_pair_grid_examples():
    g = build_grid(2)
    # point (0,0) has index 0; row line 0 = line 0; column line 0 = line 3
    f_row = Flag(0, 0)
    f_col = Flag(0, 3)
    assert classify_pair(g, f_row, f_row) == 0
    assert classify_pair(g, f_row, f_col) == 1
    # (0,1) is point index 1, also on row line 0
    assert classify_pair(g, f_row, Flag(1, 0)) == 2
    # same two points, but the second flag through its column line 4:
    # collinear on the first flag's line
    assert classify_pair(g, f_row, Flag(1, 4)) == 3
    assert classify_pair(g, Flag(1, 4), f_row) == 4  # transpose of class 3
    with pytest.raises(ValueError):
        classify_pair(g, Flag(0, 1), f_row)


def test_classify_pair_matches_matrix():
    # the scalar classifier and the vectorized matrix builder must agree
    for structure in [build_grid(2), dualize(build_grid(2)), build_symplectic(2)]:
        data = build_flag_scheme(structure)
        for x in range(data.n):
            for y in range(data.n):
                assert data.relation[x, y] == classify_pair(
                    structure, data.flags[x], data.flags[y]
                )


def test_row_class_counts_match_valencies():
    w2 = build_flag_scheme(build_symplectic(2))
    for x in range(w2.n):
        counts = np.bincount(w2.relation[x], minlength=8)
        assert tuple(counts) == (1, 2, 2, 4, 4, 8, 8, 16)

    g2 = build_flag_scheme(build_grid(2))
    for x in range(g2.n):
        counts = np.bincount(g2.relation[x], minlength=8)
        # eta = (1, t, s, st, st, st^2, s^2 t, (st)^2) at (2,1)
        assert tuple(counts) == (1, 1, 2, 2, 2, 2, 4, 4)

    thin = build_flag_scheme(build_grid(1))
    assert thin.n == 8
    for x in range(thin.n):
        assert tuple(np.bincount(thin.relation[x], minlength=8)) == (1,) * 8


def test_scheme_matrix_structure():
    data = build_flag_scheme(build_grid(3))
    n = data.n
    assert n == 32
    assert (np.diagonal(data.relation) == 0).all()
    off = data.relation.copy()
    np.fill_diagonal(off, 99)
    assert (off != 0).all()
    star = np.array([0, 1, 2, 4, 3, 5, 6, 7])
    assert np.array_equal(data.relation.T, star[data.relation])
    # classes 3 and 4 have equally many pairs
    assert (data.relation == 3).sum() == (data.relation == 4).sum()


def test_exhaustive_intersection_constancy_small():
    # independent AS4 oracle: pure-python triple loop on the 18-flag scheme
    data = build_flag_scheme(build_grid(2))
    rel = data.relation.tolist()
    n = data.n
    counts = {}
    for x in range(n):
        for y in range(n):
            k = rel[x][y]
            profile = {}
            for z in range(n):
                profile[(rel[x][z], rel[z][y])] = profile.get((rel[x][z], rel[z][y]), 0) + 1
            for (i, j), c in profile.items():
                key = (k, i, j)
                assert counts.setdefault(key, c) == c, key
            # absent combinations must be absent for every pair of the class
            for i in range(8):
                for j in range(8):
                    if (i, j) not in profile:
                        assert counts.setdefault((k, i, j), 0) == 0


def test_duality_map():
    assert check_duality_map(build_grid(2)).ok
    assert check_duality_map(build_symplectic(2)).ok
    assert check_duality_map(build_grid(1)).ok
    assert check_duality_map(dualize(build_grid(3))).ok


def test_scheme_file_roundtrip(tmp_path):
    data = build_flag_scheme(build_grid(2))
    path = tmp_path / "grid2.scheme"
    save_scheme_file(path, data.relation, 7, flags=data.flags)
    relation, d, flags = load_scheme_file(path)
    assert d == 7
    assert np.array_equal(relation, data.relation)
    assert flags == data.flags
    # headerless round trip
    path2 = tmp_path / "anon.scheme"
    save_scheme_file(path2, data.relation, 7)
    relation2, d2, flags2 = load_scheme_file(path2)
    assert np.array_equal(relation2, data.relation) and d2 == 7 and flags2 is None


def test_scheme_file_rejects_malformed(tmp_path):
    path = tmp_path / "bad.scheme"
    path.write_text("3\n")
    with pytest.raises(ParseError):
        load_scheme_file(path)
    path.write_text("2 7\n0 1\n1 0\n0 1\n")  # wrong token count
    with pytest.raises(ParseError):
        load_scheme_file(path)
    path.write_text("2 7\n0 9\n9 0\n")  # entry out of range
    with pytest.raises(ParseError):
        load_scheme_file(path)


def test_flag_count_formula():
    for structure in [build_grid(2), build_grid(4), build_symplectic(3)]:
        order = verify_gq(structure)
        flags = enumerate_flags(structure)
        assert len(flags) == (order.s + 1) * (order.t + 1) * (order.s * order.t + 1)
