"""The norm idempotents Delta_{T,n} and checks of their identities."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import FormulaMismatch
from .pbw import DistElem, HPoly, binom_shift, h_mul


@dataclass(frozen=True)
class NormElement:
    n: int
    value: HPoly

    def to_dist(self) -> DistElem:
        return self.value.to_dist()


def delta_alternating(n: int, p: int) -> HPoly:
    """sum_{i<p} (-1)^i binom(H - 2n, i)."""
    out = HPoly({}, p)
    for i in range(p):
        term = binom_shift(-2 * n, i, p)
        out = out - term if i % 2 else out + term
    return out


def delta_closed(n: int, p: int) -> HPoly:
    """binom(H - 2n - 1, p - 1)."""
    return binom_shift(-2 * n - 1, p - 1, p)


@lru_cache(maxsize=1024)
def delta(n: int, p: int) -> NormElement:
    """Delta_{T,n}; both defining expressions are computed and must agree."""
    alt = delta_alternating(n, p)
    closed = delta_closed(n, p)
    if alt != closed:
        raise FormulaMismatch(f"Delta_T,{n}: {alt} != {closed} (p={p})")
    return NormElement(n, alt)


def delta_dist(n: int, p: int) -> DistElem:
    return delta(n, p).to_dist()


def one_minus_power(p: int) -> HPoly:
    """1 - H^(p-1), with the power taken in Dist(T)."""
    H = HPoly.binom(1, p)
    power = HPoly.const(1, p)
    for _ in range(p - 1):
        power = h_mul(power, H)
    return HPoly.const(1, p) - power


def check_idempotent(n: int, p: int) -> bool:
    d = delta(n, p).value
    return h_mul(d, d) == d


def check_shift(nmoves: int, byE: bool, m: int, p: int) -> bool:
    """E^[n] Delta_{T,m} = Delta_{T,m+n} E^[n]  (F version: Delta_{T,m-n})."""
    if byE:
        g = DistElem.E(nmoves, p)
        target = m + nmoves
    else:
        g = DistElem.F(nmoves, p)
        target = m - nmoves
    return g * delta_dist(m, p) == delta_dist(target, p) * g


def check_commutes(n: int, p: int) -> bool:
    """[E^[np], Delta_T] = [F^[np], Delta_T] = 0."""
    d = delta_dist(0, p)
    e, f = DistElem.E(n * p, p), DistElem.F(n * p, p)
    return e * d == d * e and f * d == d * f


def annihilation_product(n: int, j: int, p: int) -> HPoly:
    return h_mul(delta(n, p).value, binom_shift(-2 * n, j, p))


def check_annihilation(n: int, j: int, p: int) -> bool:
    """Delta_{T,n} binom(H - 2n, j) = 0 when p does not divide j."""
    if j % p == 0:
        raise ValueError(f"j={j} is divisible by p={p}")
    return not annihilation_product(n, j, p)
