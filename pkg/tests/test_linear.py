from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from zpcap.linear import (BasisLabel, DimensionError, Eliminator, FiniteComplex, Indexer, SparseMap,
                          homology_basis, rank_of, solve_inhomogeneous, vec_add, vec_clean)
from zpcap.scalars import GF, QQ


def _dense_rank(rows, p):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


matrices = st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=6)


@settings(max_examples=60)
@given(matrices)
def test_rank_agrees_with_dense_elimination(m):
    F = GF(5)
    vecs = [{j: x for j, x in enumerate(row) if x} for row in m]
    assert rank_of(F, vecs) == _dense_rank(m, 5)


@settings(max_examples=60)
@given(matrices, st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_solver_returns_solution_or_certificate(m, b):
    F = GF(5)
    dom = list(range(len(m)))
    cod = list(range(4))
    d = SparseMap(F, dom, cod, {i: {j: x for j, x in enumerate(row) if x} for i, row in enumerate(m)})
    rhs = {j: x for j, x in enumerate(b) if x}
    res = solve_inhomogeneous(d, rhs)
    if res.feasible:
        assert vec_clean(F, d.apply(res.solution)) == vec_clean(F, rhs)
    else:
        y = res.certificate
        for i in dom:
            assert sum(y.get(r, 0) * a for r, a in d.columns.get(i, {}).items()) % 5 == 0
        assert sum(y.get(r, 0) * a for r, a in rhs.items()) % 5 != 0


def test_indexer_rejects_unknown_labels():
    ix = Indexer(["a", "b"])
    assert ix.decode(ix.encode({"b": 2})) == {"b": 2}
    with pytest.raises(Exception):
        ix.encode({"c": 1})


def test_sparse_map_checks_labels():
    with pytest.raises(DimensionError):
        SparseMap(QQ(), ["x"], ["y"], {"x": {"z": 1}})


def test_eliminator_tracks_relations():
    F = QQ()
    el = Eliminator(F)
    assert el.insert({0: 1, 1: 1}, tag="a")
    assert el.insert({1: 1}, tag="b")
    assert not el.insert({0: 2, 1: 3}, tag="c")
    assert el.rank == 2


def test_vec_add_cancels():
    F = GF(3)
    assert vec_clean(F, vec_add(F, {"x": 1}, {"x": 2})) == {}


def test_homology_of_a_small_complex():
    # x -> y, z a cycle: homology is spanned by z
    F = QQ()
    labels = [BasisLabel("x", 1, 0), BasisLabel("y", 0, 0), BasisLabel("z", 0, 0)]
    c = FiniteComplex(F, labels, lambda k: {"y": 1} if k == "x" else {})
    hb = homology_basis(c, 0)
    assert hb.rank == 1
    assert homology_basis(c, 1).rank == 0
    assert hb.project({"z": 3}) != [0]
    assert hb.project({"y": 1}) == [0]


def test_complex_refuses_non_square_zero():
    F = QQ()
    labels = [BasisLabel("a", 0, 0), BasisLabel("b", 1, 0), BasisLabel("c", 0, 0)]
    d = {"a": {"b": 1}, "b": {"c": 1}, "c": {}}
    with pytest.raises(ValueError):
        FiniteComplex(F, labels, lambda k: d[k])
