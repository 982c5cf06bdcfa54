import pytest
from hypothesis import given, strategies as st

from distfrob.norm import (
    annihilation_product,
    check_annihilation,
    check_commutes,
    check_idempotent,
    check_shift,
    delta,
    one_minus_power,
)
from distfrob.pbw import HPoly, eval_h

primes = st.sampled_from([3, 5, 7])


def test_delta_p3():
    assert delta(0, 3).value == HPoly({0: 1, 1: 2, 2: 1}, 3)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_closed_form(p):
    assert delta(0, p).value == one_minus_power(p)
    assert delta(p, p).value == delta(0, p).value


@given(st.integers(-14, 14), primes)
def test_depends_on_class(n, p):
    assert delta(n, p).value == delta(n + p, p).value


@given(st.integers(-14, 14), primes, st.integers(0, 40))
def test_indicator(n, p, k):
    assert eval_h(delta(n, p).value, k) == (1 if (k - 2 * n) % p == 0 else 0)


@given(st.integers(-10, 10), primes)
def test_idempotent(n, p):
    assert check_idempotent(n, p)


@pytest.mark.parametrize("n,byE,m,p", [(1, True, 0, 3), (3, True, 0, 3), (2, False, 1, 5),
                                       (4, False, -2, 7)])
def test_shift(n, byE, m, p):
    assert check_shift(n, byE, m, p)


def test_commutes_with_p_powers():
    assert check_commutes(1, 3)
    assert check_commutes(2, 5)


def test_annihilation():
    assert check_annihilation(0, 1, 3)
    assert check_annihilation(1, 2, 3)
    with pytest.raises(ValueError):
        check_annihilation(0, 3, 3)
    # Delta_T binom(H, p) is not zero: at H = p it evaluates to 1
    prod = annihilation_product(0, 3, 3)
    assert eval_h(prod, 3) == 1


def test_scaled_argument():
    p = 7
    d = delta(0, p).value
    for a in range(1, p):
        assert d.substitute_scaled(a) == d
    # a = 0 gives the constant 1, not Delta_T
    assert d.substitute_scaled(0) != d
