from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zpcap.scalars import (GF, GFi, I, QQ, QQi, ConfigurationError, GaussianRational, PrimeField,
                           ThetaSeries, TruncatedSeries, check_odd_prime, frobenius, rational_json,
                           reduce_gaussian, sqrt_minus_one)

primes = st.sampled_from([3, 5, 7, 11, 13])


@pytest.mark.parametrize("p", [0, 1, 2, 4, 9, 15, -3])
def test_rejects_non_odd_primes(p):
    with pytest.raises(ConfigurationError):
        check_odd_prime(p)
    with pytest.raises(ConfigurationError):
        GF(p)


@given(primes, st.integers(-50, 50), st.integers(-50, 50))
def test_prime_field_matches_integer_arithmetic(p, a, b):
    x, y = PrimeField(a, p), PrimeField(b, p)
    assert (x + y).value == (a + b) % p
    assert (x * y).value == (a * b) % p
    assert (x - y).value == (a - b) % p


@given(primes, st.integers(1, 10 ** 6))
def test_inverse_and_frobenius(p, a):
    F = GF(p)
    if a % p:
        assert F.mul(F(a), F.inv(F(a))) == 1
    assert F.frobenius(F(a)) == F(a)
    assert frobenius(a, p) == a % p


def test_gf_reads_fractions():
    F = GF(5)
    assert F(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_mixed_characteristic_is_an_error():
    with pytest.raises(ConfigurationError):
        PrimeField(1, 3) + PrimeField(1, 5)


rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)


@given(rationals, rationals, rationals, rationals)
def test_gaussian_field_axioms(a, b, c, d):
    x, y = GaussianRational(a, b), GaussianRational(c, d)
    assert x * y == y * x
    assert (x + y) - y == x
    if y:
        assert (x / y) * y == x
    assert I * I == GaussianRational(-1, 0)


def test_json_forms():
    assert rational_json(Fraction(-3, 4)) == "-3/4"
    assert rational_json(2) == "2/1"
    assert QQi().to_json(GaussianRational(Fraction(1, 2), -1)) == {"re": "1/2", "im": "-1/1"}
    assert GF(7).to_json(-1) == 6
    assert QQ().to_json(Fraction(5, 10)) == "1/2"


def test_square_roots_of_minus_one():
    assert sqrt_minus_one(5) == 2
    assert sqrt_minus_one(13) == 5
    assert sqrt_minus_one(3) is None
    assert sqrt_minus_one(7) is None


def test_reduce_gaussian_respects_products():
    a, b = GaussianRational(Fraction(1, 2), 3), GaussianRational(-2, Fraction(1, 3))
    for p in (5, 13):
        F = GF(p)
        assert reduce_gaussian(a * b, p) == F.mul(reduce_gaussian(a, p), reduce_gaussian(b, p))
    K = GFi(7)
    assert reduce_gaussian(a * b, 7) == K.mul(reduce_gaussian(a, 7), reduce_gaussian(b, 7))


def test_gfi_frobenius_is_conjugation():
    K = GFi(3)
    assert K.frobenius((1, 1)) == (1, 2)
    with pytest.raises(ConfigurationError):
        GFi(5)


def test_truncated_series_products_drop_high_orders():
    F = GF(3)
    x = TruncatedSeries(F, [1, 1], 3)
    assert (x * x * x).coeffs == (1, 0, 0, 1)
    with pytest.raises(ConfigurationError):
        x + TruncatedSeries(F, [1], 4)


def test_theta_squares_to_zero():
    th = ThetaSeries.theta_unit(GF(5), 4)
    zero = ThetaSeries(TruncatedSeries(GF(5), [], 4))
    assert th * th == zero
