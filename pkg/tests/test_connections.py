from __future__ import annotations

import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from zpcap.connections import (PRINTED_C_SERIES, FormalConnection, MirrorFixture, QuantumRing, SolvabilityError,
                               c_series, check_splitting, classical_steenrod_surface, eigen_blocks, gauge_transform,
                               hlt_extend_basis, identity, intertwining_residual, is_zero_matrix, mat_inverse,
                               mat_mul, p_divisibility, quadrics_connection, quadrics_r_matrix, r_matrix_diff,
                               solve_r_matrix, splitting_base_change, steenrod_odd_class_series, surface_cup,
                               verify_quadrics_ring, zeros)
from zpcap.scalars import GF, GFi, QQ, QQi, ConfigurationError


def _random_matrix(rng, F, n, lo=-3, hi=3):
    return [[F(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]


def test_matrix_inverse():
    F = QQ()
    rng = random.Random(1)
    for _ in range(10):
        M = _random_matrix(rng, F, 4)
        try:
            Mi = mat_inverse(F, M)
        except ZeroDivisionError:
            continue
        assert mat_mul(F, M, Mi) == identity(F, 4)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3, unique=True), st.randoms(use_true_random=False))
def test_splitting_conclusions_on_random_connections(eigs, rng):
    F = QQ()
    n = len(eigs)
    A0 = zeros(F, n)
    for i, e in enumerate(eigs):
        A0[i][i] = F(e)
    c = FormalConnection(F, [A0] + [_random_matrix(rng, F, n) for _ in range(2)])
    s = hlt_extend_basis(c, 3)
    assert all(check_splitting(c, s).values())


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_r_matrix_recovers_a_gauge(rng):
    F = QQ()
    A0 = [[F(1), 0, 0], [0, F(2), 0], [0, 0, F(5)]]
    A0 = [[F(x) for x in row] for row in A0]
    c = FormalConnection(F, [A0, _random_matrix(rng, F, 3)])
    G = [identity(F, 3), _random_matrix(rng, F, 3), _random_matrix(rng, F, 3)]
    # only the leading matrix must survive, so fix G_1 off the diagonal to keep A~_0 = A_0
    cg = gauge_transform(c, G, 4)
    R = solve_r_matrix(cg, c, identity(F, 3), 2)
    assert R.coeffs[1] == G[1] and R.coeffs[2] == G[2]


def test_coinciding_eigenvalues_are_refused():
    F = GF(3)
    A0 = [[F(0), 0], [0, F(3)]]
    c = FormalConnection(F, [A0, zeros(F, 2)])
    with pytest.raises(SolvabilityError):
        hlt_extend_basis(c, 2, [1, 1])
    assert hlt_extend_basis(FormalConnection(QQ(), [[[0, 0], [0, 3]], [[0, 1], [1, 0]]]), 2).blocks


def test_non_nilpotent_block_is_rejected():
    F = QQ()
    with pytest.raises(ConfigurationError):
        eigen_blocks(F, [[F(1), F(1)], [F(1), F(1)]])


def test_r0_must_intertwine():
    F = QQi()
    src = quadrics_connection(F)
    tgt = quadrics_connection(F)
    bad = zeros(F, 4)
    bad[0][1] = F(1)
    with pytest.raises(SolvabilityError):
        solve_r_matrix(src, tgt, bad, 2)


@pytest.mark.parametrize("eps", [1, -1])
def test_r_matrix_matches_printed_coefficients(eps):
    assert r_matrix_diff(eps, 4) == []
    R = quadrics_r_matrix(eps, 4)
    for k in range(5):
        assert is_zero_matrix(R.F, intertwining_residual(R.source, R.target, R.coeffs, k))


def test_epsilon_must_be_a_sign():
    with pytest.raises(ConfigurationError):
        quadrics_r_matrix(2)


def test_c_series():
    cs = c_series(4)
    assert cs.normalized[:5] == PRINTED_C_SERIES
    assert cs.epsilon_independent and cs.real


# DERIVED: solver output past the printed range, frozen.
C_SERIES_T6 = [Fr(1), Fr(0), Fr(1, 256), Fr(0), Fr(81, 262144), Fr(0), Fr(5625, 67108864)]


def test_c_series_sixth_order_frozen():
    assert c_series(6).normalized == C_SERIES_T6


@pytest.mark.parametrize("p,lead", [(3, 2), (5, 2), (7, 1)])
def test_leading_coefficients(p, lead):
    s = steenrod_odd_class_series(p, 4)
    half = (p - 1) // 2
    assert all(c == 0 for c in s.even.coeffs[:half])
    assert s.even.coeffs[half] == lead


# DERIVED: orders whose normalized coefficient has numerator divisible by p (zeros included).
@pytest.mark.parametrize("p,orders", [(3, [1, 3, 4, 5, 6]), (5, [1, 3, 5, 6]), (7, [1, 3, 5])])
def test_p_divisibility_frozen(p, orders):
    assert p_divisibility(p, 6) == orders


def test_quadrics_ring_identities():
    checks = verify_quadrics_ring()
    assert checks and all(checks.values()), [k for k, v in checks.items() if not v]


def test_ring_grading():
    R = QuantumRing()
    assert R.grading("1") == Fr(-3, 2)
    assert R.grading("h6") == Fr(3, 2)


def test_quadrics_splitting():
    c = quadrics_connection(QQ(), full=True)
    s = hlt_extend_basis(c, 3, [1, 6, 1])
    assert [(m, lam) for _, m, lam in s.blocks] == [(1, 8), (6, 0), (1, -8)]
    assert all(check_splitting(c, s).values())


@pytest.mark.parametrize("p", [3, 5, 11])
def test_splitting_commutes_with_reduction(p):
    assert splitting_base_change(p, 3)


def test_mirror_fixture_constraints():
    for eps in (1, -1):
        assert all(MirrorFixture(eps).pairing_constraints().values())


def test_classical_steenrod_is_frobenius_twisted():
    K = GFi(3)
    y = [(1, 1), 0, 0, 0]
    x = [0, 1, 0, 0]
    op = classical_steenrod_surface(K, y, 3)
    # (1 + i)^3 = 1 - i over F_9 and the cup of e0 with e1 is 1
    assert op.twisted[0] == (1, 2)
    assert op(x).even.coeffs[1] == K.mul(K(1), (1, 2))
    with pytest.raises(ConfigurationError):
        classical_steenrod_surface(GF(5), y, 3)


def test_surface_cup_is_antisymmetric():
    F = GF(5)
    for i in range(4):
        for j in range(4):
            x = [1 if k == i else 0 for k in range(4)]
            y = [1 if k == j else 0 for k in range(4)]
            assert F.add(surface_cup(F, x, y), surface_cup(F, y, x)) == 0
