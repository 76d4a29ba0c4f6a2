from __future__ import annotations

import pytest

from zpcap.ainfinity import D, UNIT, a_zn
from zpcap.hochschild import DiagonalBimodule, chain_differential, phi, psi_map
from zpcap.pfold import (CompositionError, chain_keys, collapse, differential, differential_flat,
                         full_collapse, n_fold_cap, pfold_complex, tau_vec, validate)
from zpcap.properties import apply
from zpcap.linear import vec_clean
from zpcap.scalars import GF


@pytest.mark.parametrize("p,N,n", [(3, 4, 2), (3, 4, 3), (5, 3, 3), (5, 4, 2)])
def test_two_routes_to_the_differential_agree(p, N, n):
    A = a_zn(GF(p), N)
    for key in chain_keys(A, n, N + 1):
        assert differential(A, key) == vec_clean(A.F, differential_flat(A, key))


@pytest.mark.parametrize("n", [2, 3])
def test_rotation_has_order_n_and_commutes_with_d(n):
    A = a_zn(GF(3), 5)
    F = A.F
    for key in chain_keys(A, n, 5):
        v = {key: F.one()}
        assert tau_vec(A, v, n) == v
        assert vec_clean(F, apply(F, lambda k: differential(A, k), tau_vec(A, v))) == \
            vec_clean(F, tau_vec(A, differential(A, key)))


def test_pfold_complex_squares_to_zero():
    pfold_complex(a_zn(GF(3), 4), 3, 6)


@pytest.mark.parametrize("n", [2, 3])
def test_collapse_is_a_chain_map(n):
    A = a_zn(GF(3), 4)
    F = A.F
    M = DiagonalBimodule(A)
    for key in chain_keys(A, n, 6):
        lhs = apply(F, lambda k: collapse(A, k), differential(A, key))
        if n == 2:
            rhs = apply(F, lambda k: {((m2, b2),): c for (m2, b2), c in chain_differential(M, k[0]).items()},
                        collapse(A, key))
        else:
            rhs = apply(F, lambda k: differential(A, k), collapse(A, key))
        assert vec_clean(F, lhs) == vec_clean(F, rhs)


def test_full_collapse_lands_in_hochschild_chains():
    A = a_zn(GF(3), 4)
    key = ((D, (D,)), (D, ()), (UNIT, (D, D)))
    out = full_collapse(A, {key: A.F.one()})
    assert all(len(k) == 1 for k in out)


def test_malformed_chains_are_rejected():
    A = a_zn(GF(3), 4)
    with pytest.raises(CompositionError):
        validate(A, [])
    with pytest.raises(CompositionError):
        validate(A, [(2, ())])


def test_cap_by_the_unit_cochains_is_the_identity():
    A = a_zn(GF(3), 4)
    F = A.F
    unit = psi_map(phi(A, 0, UNIT))
    for key in chain_keys(A, 3, 3):
        assert vec_clean(F, n_fold_cap(A, [unit] * 3, key)) == {key: F.one()}
