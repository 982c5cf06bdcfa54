"""Frobenius Fr, its linear section Fr', and the splitting phi = Fr'(.) Delta_T."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .arith import binom_mod_p
from .norm import delta_dist
from .pbw import DistElem, HPoly, Monomial, binom_shift, h_mul


def fr(x: DistElem) -> DistElem:
    """(a, b, c) -> (a/p, b/p, c/p) when p divides all three, else 0."""
    p = x.p
    return DistElem(
        {(a // p, b // p, c // p): v for (a, b, c), v in x.terms.items()
         if a % p == 0 and b % p == 0 and c % p == 0},
        p,
    )


def fr_prime(x: DistElem) -> DistElem:
    """(a, b, c) -> (ap, bp, cp).  Multiplicative on each Borel half only."""
    p = x.p
    return DistElem({(a * p, b * p, c * p): v for (a, b, c), v in x.terms.items()}, p)


@lru_cache(maxsize=1 << 16)
def _phi_monomial(m: Monomial, p: int) -> DistElem:
    return fr_prime(DistElem({m: 1}, p)) * delta_dist(0, p)


def phi(x: DistElem) -> DistElem:
    """The non-unital splitting x -> Fr'(x) Delta_T, applied monomialwise."""
    p = x.p
    out: dict[Monomial, int] = {}
    for m, v in x.terms.items():
        for mm, w in _phi_monomial(m, p).terms.items():
            out[mm] = out.get(mm, 0) + v * w
    return DistElem(out, p)


def phi_h(h: HPoly) -> HPoly:
    """phi restricted to Dist(T)."""
    p = h.p
    lifted = HPoly({b * p: c for b, c in h.coeffs.items()}, p)
    return h_mul(lifted, binom_shift(-1, p - 1, p))


def in_level_image(x: DistElem, m: int) -> bool:
    """All indices below p^(m+1): the image of the level-m enveloping algebra."""
    bound = x.p ** (m + 1)
    return all(a < bound and b < bound and c < bound for a, b, c in x.terms)


def level_generators(m: int, p: int) -> list[DistElem]:
    """E^[p^i], binom(H, p^i), F^[p^i] for i <= m."""
    gens = []
    for i in range(m + 1):
        q = p**i
        gens += [DistElem.E(q, p), DistElem.binomH(q, p), DistElem.F(q, p)]
    return gens


def generated_span(m: int, p: int, max_rounds: int | None = None):
    """Echelon basis of the subalgebra generated by the level-m generators.

    Breadth-first closure under left multiplication by generators, stopping
    when a round adds nothing.  Returns (pivot monomials, dimension).
    """
    gens = level_generators(m, p)
    pivots: dict[Monomial, DistElem] = {}

    def reduce(v: DistElem) -> DistElem:
        while v.terms:
            lead = max(v.terms)
            if lead not in pivots:
                return v
            piv = pivots[lead]
            v = v - piv.scale(v.terms[lead] * pow(piv.terms[lead], -1, p))
        return v

    frontier = [DistElem.one(p)]
    pivots[(0, 0, 0)] = frontier[0]
    rounds = 0
    while frontier and (max_rounds is None or rounds < max_rounds):
        rounds += 1
        new = []
        for v in frontier:
            for g in gens:
                w = reduce(g * v)
                if w.terms:
                    pivots[max(w.terms)] = w
                    new.append(w)
        frontier = new
    return sorted(pivots), len(pivots)


def check_congruence_identity(a: int, b: int, r: int, p: int) -> bool:
    """The two Delta-weighted binomial identities behind the straightening check.

    binom(H - pa - pb + 2r, r) Delta_{T,pb-r} equals
    phi(binom(H - a - b + 2r', r')) if r = p r', and 0 otherwise.
    """
    if not 1 <= r <= min(p * a, p * b):
        raise ValueError("need 1 <= r <= min(pa, pb)")
    lhs = h_mul(binom_shift(-p * a - p * b + 2 * r, r, p),
                binom_shift(-2 * (p * b - r) - 1, p - 1, p))
    if r % p:
        return not lhs
    rr = r // p
    return lhs == phi_h(binom_shift(-a - b + 2 * rr, rr, p))


def monomials(bound: int) -> list[Monomial]:
    """All (a, b, c) with entries in 0..bound."""
    return list(product(range(bound + 1), repeat=3))


def find_fr_prime_witness(p: int, bound: int = 2):
    """Smallest monomial pair (by total degree, then lexicographic) on which
    Fr' fails to be multiplicative."""
    monos = sorted(monomials(bound), key=lambda m: (sum(m), m))
    pairs = sorted(product(monos, monos), key=lambda mn: (sum(mn[0]) + sum(mn[1]), mn))
    for m1, m2 in pairs:
        x, y = DistElem({m1: 1}, p), DistElem({m2: 1}, p)
        lhs, rhs = fr_prime(x * y), fr_prime(x) * fr_prime(y)
        if lhs != rhs:
            return m1, m2, lhs, rhs
    return None


def binom_lucas_vanishing(m: int, j: int, p: int) -> bool:
    """binom(pm, j) = 0 mod p unless p | j, and binom(pm, pj') = binom(m, j')."""
    value = binom_mod_p(p * m, j, p)
    if j % p:
        return value == 0
    return value == binom_mod_p(m, j // p, p)
