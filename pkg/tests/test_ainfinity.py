from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from zpcap.ainfinity import (D, UNIT, AInfinityAlgebra, DegeneratePotentialError, DiagonalBimodule, Potential,
                             TensorBimodulePower, UnsupportedLeadingOrderError, a_zn, check_bimodule_relations,
                             check_relations, compose_series, exterior_algebra, graded_associative,
                             minimal_model_of_potential, normalize_potential)
from zpcap.scalars import GF, QQ


@pytest.mark.parametrize("p,N", [(3, 2), (3, 4), (3, 5), (5, 3), (5, 4), (5, 6), (7, 5)])
def test_monomial_models_satisfy_the_relations(p, N):
    A = a_zn(GF(p), N)
    assert check_relations(A, 2 * N + 1) == []
    assert A.mu((D,) * N) == {UNIT: 1}


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5]), st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_potential_models_satisfy_the_relations(p, coeffs):
    F = GF(p)
    w = {i + 2: c for i, c in enumerate(coeffs) if c % p}
    if not w:
        return
    A = minimal_model_of_potential(Potential(F, w))
    assert check_relations(A, 2 * max(w) + 1) == []


def test_a_broken_table_is_caught():
    F = GF(3)
    mu = {(D, UNIT): {D: 1}, (UNIT, D): {D: 2}, (UNIT, UNIT): {UNIT: 1},
          (D, D, D): {UNIT: 1}, (UNIT, D, D): {D: 1}}
    A = AInfinityAlgebra(F, ["1", "d"], [0, 1], mu, unit=UNIT)
    assert check_relations(A, 5)


def test_grading_is_enforced():
    with pytest.raises(ValueError):
        AInfinityAlgebra(GF(3), ["1", "d"], [0, 1], {(D, D): {D: 1}})


def test_p_dividing_n_is_unsupported():
    with pytest.raises(UnsupportedLeadingOrderError):
        a_zn(GF(3), 6)
    with pytest.raises(UnsupportedLeadingOrderError):
        normalize_potential(Potential(GF(5), {5: 1, 7: 1}), 10)


def test_zero_potential_is_degenerate():
    with pytest.raises(DegeneratePotentialError):
        minimal_model_of_potential(Potential(GF(3), {4: 3}))


def test_exterior_and_associative_algebras():
    F = QQ()
    assert check_relations(exterior_algebra(F), 4) == []
    # dual numbers k[e]/e^2 with e even, as a graded associative algebra
    A = graded_associative(F, ["1", "e"], [0, 0], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, unit=0)
    assert check_relations(A, 4) == []


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=6))
def test_normalization_reaches_the_leading_monomial(p, tail):
    F = GF(p)
    N = 2 if p != 2 else 3
    w = Potential(F, {N: 1, **{N + 1 + i: c for i, c in enumerate(tail)}})
    top = N + len(tail) + 2
    res = normalize_potential(w, top)
    Wl = [F.zero()] * (top + 1)
    for i, c in w.coeffs.items():
        Wl[i] = c
    got = compose_series(F, Wl, res.substitution, top)
    assert [F(x) for x in got] == [F(1) if i == N else 0 for i in range(top + 1)]


@pytest.mark.parametrize("n", [2, 3])
def test_bimodule_structures_satisfy_the_relations(n):
    A = a_zn(GF(3), 4)
    assert check_bimodule_relations(DiagonalBimodule(A), 6) == []
    assert check_bimodule_relations(TensorBimodulePower(A, n), 5) == []
