from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from zpcap.diagonal import (DiagonalDefect, NotACycleError, Resolution, check_coinvariant_pattern, check_diagonal,
                            check_helper_identities, check_squares, contracting_homotopy, diagonal_approximation,
                            recursion_rhs, solve_diagonal_chains, verify_diagonal_chains)
from zpcap.linear import vec_clean
from zpcap.scalars import ConfigurationError


@pytest.mark.parametrize("p", [3, 5, 7])
def test_resolution_and_tensor_square_are_complexes(p):
    assert all(check_squares(p, 6).values())


def test_even_characteristic_is_refused():
    with pytest.raises(ConfigurationError):
        Resolution(2)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(1, 5), st.data())
def test_homotopy_inverts_the_boundary_on_cycles(p, n, data):
    W = Resolution(p)
    keys = W.product_keys(n + 1)
    picks = data.draw(st.lists(st.tuples(st.sampled_from(keys), st.integers(1, p - 1)), min_size=1, max_size=4))
    x = vec_clean(W.F, {k: c for k, c in picks})
    b = vec_clean(W.F, W.tensor_boundary(x))
    if not b:
        return
    y = contracting_homotopy(W, b, n)
    assert vec_clean(W.F, W.tensor_boundary(y)) == b


def test_homotopy_rejects_non_cycles():
    W = Resolution(3)
    with pytest.raises(NotACycleError):
        contracting_homotopy(W, W.cross(W.gen(1), W.gen(0)))
    with pytest.raises(NotACycleError):
        contracting_homotopy(W, W.cross(W.gen(0), W.gen(0)))


@pytest.mark.parametrize("p", [3, 5])
def test_diagonal_is_an_equivariant_chain_map(p):
    delta = diagonal_approximation(p, 8)
    assert all(check_diagonal(delta).values())
    assert all(check_coinvariant_pattern(delta).values())


@pytest.mark.parametrize("p", [3, 5])
def test_diagonal_chains(p):
    dc = solve_diagonal_chains(p, 7)
    assert all(dc.cycle_checks.values())
    assert all(verify_diagonal_chains(dc).values())
    assert dc.chains[0] == {}


def test_a_wrong_diagonal_is_detected():
    W = Resolution(3)
    delta = diagonal_approximation(3, 4)
    # flip the sign of delta(D_1): still a cycle lift of nothing useful, so the recursion breaks
    delta.values[1] = {k: W.F.neg(c) for k, c in delta.values[1].items()}
    with pytest.raises(DiagonalDefect) as e:
        solve_diagonal_chains(3, 4, delta)
    assert e.value.residual


@pytest.mark.parametrize("p", [3, 5, 7])
def test_shuffle_identities(p):
    assert all(check_helper_identities(p, 5).values())


def test_low_degree_values():
    W = Resolution(3)
    delta = diagonal_approximation(3, 1)
    assert delta.values[0] == {(0, 0, 0, 0): 1}
    assert vec_clean(W.F, W.tensor_boundary(delta.values[1])) == vec_clean(W.F, delta(W.boundary(W.gen(1))))
    rhs = recursion_rhs(delta, 0, {})
    assert vec_clean(W.F, W.tensor_boundary(rhs)) == {}
