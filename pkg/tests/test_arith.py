from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from distfrob.arith import (
    IntegralityError,
    Prime,
    binom_int,
    binom_mod_p,
    fraction_mod_p,
    level_binom,
    level_digits,
    q_factorial,
)

primes = st.sampled_from([3, 5, 7])


def test_prime_validation():
    assert Prime(5).p == 5
    for bad in (2, 4, 9, 1, -3):
        with pytest.raises(ValueError):
            Prime(bad)


def test_negative_top_binomials():
    assert binom_int(-1, 4) == 1
    assert binom_int(-1, 3) == -1
    assert binom_int(-3, 2) == 6
    assert binom_mod_p(-1, 2, 3) == 1
    assert binom_mod_p(-5, 2, 3) == 15 % 3


@given(st.integers(-60, 200), st.integers(0, 40), primes)
def test_lucas_matches_exact(n, k, p):
    assert binom_mod_p(n, k, p) == binom_int(n, k) % p


def test_lucas_digits():
    # 10 = 101_3, 3 = 010_3 -> binom(1,0) binom(0,1) binom(1,0) = 0
    assert binom_mod_p(10, 3, 3) == 0
    assert binom_mod_p(9, 3, 3) == 0
    assert binom_mod_p(12, 3, 3) == comb(12, 3) % 3


def test_level_digits():
    assert level_digits(7, 1, 3) == (2, 1)
    assert level_digits(7, 0, 3) == (7, 0)
    with pytest.raises(ValueError):
        level_digits(-1, 0, 3)


def test_fraction_mod_p():
    assert fraction_mod_p(Fraction(1, 2), 3) == 2
    with pytest.raises(IntegralityError):
        fraction_mod_p(Fraction(1, 3), 3)


@given(st.integers(0, 60), st.data(), primes, st.integers(0, 2))
def test_level_binom_is_integral(k, data, p, m):
    k1 = data.draw(st.integers(0, k))
    v = level_binom(k, k1, m, p)
    assert 0 <= v < p
    # check against the exact quotient
    exact = Fraction(comb(k, k1) * q_factorial(k1, m, p) * q_factorial(k - k1, m, p),
                     q_factorial(k, m, p))
    assert exact.denominator % p != 0


def test_level_binom_values():
    # level 0: every d<k> is k! d^[k], so the constant is 1
    assert level_binom(5, 2, 0, 3) == 1
    # level infinity behaviour: binom(3, 1) = 3 = 0 at p = 3
    assert level_binom(3, 1, 5, 3) == 0
