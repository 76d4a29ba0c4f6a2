from __future__ import annotations

import pytest

from zpcap.an_workbench import (GradedSolver, TruncationError, build_generators, cap_action_matrix,
                                check_printed_homotopy, check_printed_tau_identities, check_witness,
                                cohomology_ranks, default_length, expected_pattern, generator_weight,
                                hochschild_ranks, homotopy_witness, matrix_product, three_fold_ranks)
from zpcap.scalars import GF, ConfigurationError


def test_generators_pass_their_cycle_checks():
    gs = build_generators(5)
    assert gs.checks and all(gs.checks.values())


def test_length_bound_is_enforced():
    with pytest.raises(TruncationError) as e:
        build_generators(5, 3, 17)
    assert e.value.weight == 18


@pytest.mark.parametrize("N,p", [(6, 3), (1, 3), (4, 4), (10, 5)])
def test_bad_configurations(N, p):
    with pytest.raises(ConfigurationError):
        GradedSolver(N, p)


def test_solver_needs_p_three():
    with pytest.raises(ConfigurationError):
        GradedSolver(4, 5)


def test_cap_matrix_pattern_small_n():
    for N in (2, 4, 5):
        assert cap_action_matrix(N, 3, 2).entries == expected_pattern(N, 2)


def test_longer_truncation_keeps_the_pattern():
    assert cap_action_matrix(4, 3, 3).entries == expected_pattern(4, 3)


# DERIVED: computed once with the solver and cross-checked against the square of
# the predicted pattern, which is an independent route through multiplicativity.
SQUARE_N5 = [[[0, 0, 0], [0, 2, 0], [0, 0, 0], [0, 0, 0]],
             [[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0]],
             [[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 1, 0]],
             [[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0]]]


def test_square_of_the_cocycle_acts_by_the_squared_matrix():
    M = expected_pattern(5, 2)
    assert matrix_product(GF(3), M, M, 2) == SQUARE_N5
    assert cap_action_matrix(5, 3, 2, power=2).entries == SQUARE_N5


def test_expected_pattern_entries():
    M = expected_pattern(7, 2)
    assert M[2][5] == [1, 0, 0]          # R^5 -> R^2
    assert M[4][0] == [0, 2, 0]          # R^0 -> -(t/7) R^4, and -1/7 = 2 mod 3
    assert M[5][1] == [0, 1, 0]          # R^1 -> (t/7) R^5
    assert all(M[j][2] == [0, 0, 0] for j in range(6))


def test_solver_witness_is_a_boundary_witness():
    w = homotopy_witness(4, 0)
    assert check_witness(4, 0, w, {(1, 1): 2})
    assert not check_witness(4, 0, w, {(1, 1): 1})


@pytest.mark.parametrize("N", [4, 5, 7])
def test_printed_tau_identities(N):
    assert all(check_printed_tau_identities(N).values())


def test_printed_homotopy_for_n_four():
    assert check_printed_homotopy(4)
    with pytest.raises(ConfigurationError):
        check_printed_homotopy(5)


@pytest.mark.parametrize("N", [2, 4, 5])
def test_rank_tables(N):
    h, c, t = hochschild_ranks(N), cohomology_ranks(N), three_fold_ranks(N)
    assert (h.total(0), h.total(1)) == (0, N - 1)
    assert (c.total(0), c.total(1)) == (N - 1, 0)
    assert (t.total(0), t.total(1)) == (0, N - 1)


def test_ranks_for_p_five():
    h = hochschild_ranks(4, 5)
    assert (h.total(0), h.total(1)) == (0, 3)


def test_generator_weights_are_spaced_by_two():
    ws = [generator_weight(5, j) for j in range(4)]
    assert [b - a for a, b in zip(ws, ws[1:])] == [-2, -2, -2]
    assert default_length(5) == 28
