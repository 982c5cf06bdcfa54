"""Exact integer and mod-p binomial arithmetic.

Scalars are plain Python ints reduced into ``range(p)``; intermediate
quantities are exact big integers or :class:`fractions.Fraction`, so there
is no overflow path at all.  Anything that should be p-integral but is not
raises :class:`IntegralityError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


class IntegralityError(ArithmeticError):
    """A quantity that must be p-integral has p in its denominator."""


class FormulaMismatch(AssertionError):
    """Two independent routes to the same value disagree."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Prime:
    """An odd prime, checked at construction."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p == 2:
            raise ValueError(f"expected an odd prime, got {self.p!r}")

    def __int__(self) -> int:
        return self.p


def check_prime(p: int) -> int:
    return Prime(int(p)).p


def binom_int(n: int, k: int) -> int:
    """Falling-factorial binomial n(n-1)...(n-k+1)/k!, valid for negative n."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if n >= 0:
        return comb(n, k)
    # binom(-m, k) = (-1)^k binom(m+k-1, k)
    return (-1) ** k * comb(-n + k - 1, k)


def _lucas(n: int, k: int, p: int) -> int:
    result = 1
    while k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        result = result * comb(ni, ki) % p
    return result


@lru_cache(maxsize=1 << 16)
def binom_mod_p(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p via base-p digits (Lucas).

    Negative tops are reflected first: binom(-m, k) = (-1)^k binom(m+k-1, k).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if n >= 0:
        return _lucas(n, k, p)
    v = _lucas(-n + k - 1, k, p)
    return (-v) % p if k % 2 else v


def level_digits(k: int, m: int, p: int) -> tuple[int, int]:
    """Split k = q * p**m + r with 0 <= r < p**m."""
    if k < 0 or m < 0:
        raise ValueError("k and m must be non-negative")
    return divmod(k, p**m)


def level_q(k: int, m: int, p: int) -> int:
    return k // p**m


def fraction_mod_p(x: Fraction | int, p: int) -> int:
    """Reduce a p-integral rational mod p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise IntegralityError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def exact_div_mod_p(num: int, den: int, p: int) -> int:
    return fraction_mod_p(Fraction(num, den), p)


@lru_cache(maxsize=1 << 16)
def level_binom(k: int, k1: int, m: int, p: int) -> int:
    """Level-m binomial binom(k, k1) * q(k1)! q(k-k1)! / q(k)!, reduced mod p.

    This is the structure constant of d<k1> d<k-k1> = c * d<k> in the
    level-m divided-power ring.
    """
    if not 0 <= k1 <= k:
        raise ValueError("need 0 <= k1 <= k")
    q1, q2, q = level_q(k1, m, p), level_q(k - k1, m, p), level_q(k, m, p)
    value = Fraction(comb(k, k1) * factorial(q1) * factorial(q2), factorial(q))
    return fraction_mod_p(value, p)


@lru_cache(maxsize=1 << 14)
def q_factorial(k: int, m: int, p: int) -> int:
    """Exact q_k! for the level-m digit q_k = k // p**m."""
    return factorial(level_q(k, m, p))


def falling_ratio_mod_p(k: int, l: int, m: int, p: int) -> int:
    """q_k! / q_{k-l}! mod p (always an integer)."""
    return (q_factorial(k, m, p) // q_factorial(k - l, m, p)) % p
