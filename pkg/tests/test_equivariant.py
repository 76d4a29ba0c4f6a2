from __future__ import annotations

import pytest

from zpcap.ainfinity import D, UNIT, a_zn
from zpcap.equivariant import (PreconditionError, d_eq, equivariant_cap_chain, homotopy,
                               lax_monoidal_vec, pfold_zp, pth_power, tau_eq, tau_minus_one_power, tensor_zp)
from zpcap.hochschild import phi, unit_cochain
from zpcap.linear import add_into, vec_clean
from zpcap.pfold import chain_keys
from zpcap.scalars import GF

T = 3


def _keys(A, p, L):
    for x in chain_keys(A, p, L):
        for a in range(T + 1):
            for e in (0, 1):
                yield (a, e, x)


@pytest.mark.parametrize("p,N", [(3, 4), (3, 5)])
def test_equivariant_differential_squares_to_zero(p, N):
    A = a_zn(GF(p), N)
    X = pfold_zp(A, p)
    for key in _keys(A, p, 3):
        assert vec_clean(A.F, d_eq(X, d_eq(X, {key: 1}, T), T)) == {}


def test_theta_homotopy_gives_tau_minus_one():
    A = a_zn(GF(3), 4)
    F = A.F
    X = pfold_zp(A, 3)
    for key in _keys(A, 3, 3):
        v = {key: F.one()}
        lhs = d_eq(X, homotopy(X, v), T)
        add_into(F, lhs, homotopy(X, d_eq(X, v, T)))
        rhs = tau_eq(X, v)
        add_into(F, rhs, v, -1)
        # both sides vanish in the top t-power only through truncation
        lhs = {k: c for k, c in lhs.items() if k[0] < T}
        rhs = {k: c for k, c in rhs.items() if k[0] < T}
        assert vec_clean(F, lhs) == vec_clean(F, rhs)


def test_tau_minus_one_power_is_the_norm():
    A = a_zn(GF(3), 4)
    X = pfold_zp(A, 3)
    for x in chain_keys(A, 3, 3):
        v = {x: 1}
        assert vec_clean(A.F, tau_minus_one_power(X, v)) == vec_clean(A.F, X.norm(v))


def test_lax_monoidal_map_is_a_chain_map():
    A = a_zn(GF(3), 4)
    F = A.F
    X = pfold_zp(A, 3)
    XY = tensor_zp(X, X)
    keys = list(_keys(A, 3, 2))
    for u in keys[::7]:
        for v in keys[::11]:
            if u[0] + v[0] > T - 1:
                continue
            uu, vv = {u: F.one()}, {v: F.one()}
            lhs = d_eq(XY, lax_monoidal_vec(X, X, uu, vv, T), T)
            rhs = lax_monoidal_vec(X, X, d_eq(X, uu, T), vv, T)
            s = -1 if (X.deg(u[2]) + u[1]) % 2 else 1
            add_into(F, rhs, lax_monoidal_vec(X, X, uu, d_eq(X, vv, T), T), s)
            trim = lambda w: vec_clean(F, {k: c for k, c in w.items() if k[0] < T})
            assert trim(lhs) == trim(rhs)


def test_pth_power_needs_a_cycle():
    A = a_zn(GF(3), 4)
    X = pfold_zp(A, 3)
    key = ((UNIT, ()), (UNIT, ()), (D, (D, D, D)))
    with pytest.raises(PreconditionError):
        pth_power(X, {key: 1})


def test_cap_by_the_unit_is_the_identity():
    A = a_zn(GF(3), 4)
    F = A.F
    c = {(1, 1, ((UNIT, (D,)), (D, ()), (UNIT, (D, D)))): F.one()}
    assert vec_clean(F, equivariant_cap_chain(A, unit_cochain(A), c, 3)) == c


def test_cap_commutes_with_d_eq_for_a_cocycle():
    A = a_zn(GF(3), 4)
    F = A.F
    X = pfold_zp(A, 3)
    f = phi(A, 1, UNIT)
    for key in list(_keys(A, 3, 3))[::5]:
        v = {key: F.one()}
        lhs = d_eq(X, equivariant_cap_chain(A, f, v, 3), T)
        rhs = equivariant_cap_chain(A, f, d_eq(X, v, T), 3)
        assert vec_clean(F, lhs) == vec_clean(F, rhs)
