from __future__ import annotations

import pytest

from zpcap.ainfinity import D, UNIT, DiagonalBimodule, a_zn, exterior_algebra
from zpcap.hochschild import (HochschildCochain, chain_differential, chain_keys, cochain_complex,
                              cochain_differential, connes, cup_product, cyclic_differential,
                              hochschild_chain_complex, nu_differential, nu_keys, phi, unit_cochain)
from zpcap.linear import add_into, homology_basis, vec_clean
from zpcap.properties import apply
from zpcap.scalars import GF, QQ


@pytest.mark.parametrize("p,N", [(3, 4), (5, 3), (5, 6)])
def test_chain_complexes_square_to_zero(p, N):
    A = a_zn(GF(p), N)
    # FiniteComplex checks d^2 = 0 on construction
    hochschild_chain_complex(A, N + 3)
    hochschild_chain_complex(A, 4, normalized=False)
    cochain_complex(A, N + 3)


@pytest.mark.parametrize("p,N", [(3, 4), (3, 5), (5, 3), (7, 4)])
def test_odd_cochain_boundaries(p, N):
    A = a_zn(GF(p), N)
    F = A.F
    L = 3 * N + 2
    for k in range(N):
        got = cochain_differential(phi(A, k, D), L).table
        assert got == {(D,) * (k + N - 1): {UNIT: F(N)}}
        assert cochain_differential(phi(A, k, UNIT), L).table == {}


def test_unit_cochain_is_a_two_sided_unit():
    A = a_zn(GF(5), 4)
    for x in (phi(A, 2, D), phi(A, 3, UNIT), phi(A, 0, D)):
        assert cup_product(unit_cochain(A), x, 10) == x
        assert cup_product(x, unit_cochain(A), 10) == x


def test_cochain_parity_is_checked():
    A = a_zn(GF(3), 4)
    with pytest.raises(ValueError):
        HochschildCochain(A, 1, {(D,): {UNIT: 1}})


def test_exterior_algebra_has_homology_in_every_length():
    # Lambda[d] has HH_* = k[d] (x) Lambda: cycles survive in every length
    A = exterior_algebra(QQ())
    c = hochschild_chain_complex(A, 4)
    total = homology_basis(c, 0).rank + homology_basis(c, 1).rank
    assert total == 2 * 5


@pytest.mark.parametrize("p,N", [(3, 4), (5, 3)])
def test_connes_and_cyclic_differential(p, N):
    A = a_zn(GF(p), N)
    F = A.F
    for key in nu_keys(A, 3):
        B = connes(A, key)
        b = nu_differential(A, key)
        assert apply(F, lambda k: connes(A, k), B) == {}
        bB = apply(F, lambda k: nu_differential(A, k), B)
        add_into(F, bB, apply(F, lambda k: connes(A, k), b))
        assert vec_clean(F, bB) == {}
        assert apply(F, lambda k: nu_differential(A, k), b) == {}
        v = cyclic_differential(A, (0, key), 2)
        assert apply(F, lambda k: cyclic_differential(A, k, 2), v) == {}


def test_normalized_chains_skip_the_unit():
    A = a_zn(GF(3), 4)
    for m, bar in chain_keys(A, 3):
        assert UNIT not in bar
        for (m2, bar2) in chain_differential(DiagonalBimodule(A), (m, bar)):
            assert UNIT not in bar2
