"""Dist(SL2) over F_p in the PBW basis E^[a] binom(H, b) F^[c].

The torus part Dist(T) is handled through evaluation: an element of
span{binom(H, b) : b < p**R} is the same thing as a function Z/p**R -> F_p
(the evaluation matrix binom(n, b), 0 <= n, b < p**R, is unitriangular).
Products become pointwise products and the shift H -> H + s becomes a
rotation, which is what makes straightening cheap.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .arith import binom_mod_p, check_prime

Monomial = tuple[int, int, int]


# --------------------------------------------------------------------------
# torus tables

def torus_size(degree: int, p: int) -> int:
    """Smallest p**R strictly above ``degree``."""
    n = p
    while n <= degree:
        n *= p
    return n


@lru_cache(maxsize=64)
def _tables(N: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(eval matrix M[n, b] = binom(n, b), its inverse as float64) mod p."""
    M = np.zeros((N, N), dtype=np.int64)
    M[:, 0] = 1
    for n in range(1, N):
        M[n, 1:] = (M[n - 1, 1:] + M[n - 1, :-1]) % p
    # inverse of the Pascal matrix: (-1)^(s-t) binom(s, t)
    sign = np.fromfunction(lambda s, t: 1 - 2 * ((s + t) % 2), (N, N), dtype=np.int64)
    Minv = (M * sign) % p
    return M, Minv.astype(np.float64)


@lru_cache(maxsize=4096)
def _shifted_binom(j: int, shift: int, N: int, p: int) -> np.ndarray:
    """Values of binom(n + shift, j) for n in Z/N."""
    col = _tables(N, p)[0][:, j]
    return np.roll(col, -(shift % N))


def _to_values(coeffs: Mapping[int, int], N: int, p: int) -> np.ndarray:
    M = _tables(N, p)[0]
    bs = list(coeffs)
    return M[:, bs] @ np.array([coeffs[b] for b in bs], dtype=np.int64) % p


def _from_values_batch(rows: np.ndarray, N: int, p: int) -> np.ndarray:
    # each dot product is a sum of N terms below p^2; float64 is exact up to 2^53
    if N * (p - 1) ** 2 >= 1 << 53:
        raise OverflowError(f"torus size {N} too large for exact float products at p={p}")
    Minv = _tables(N, p)[1]
    return np.rint(rows.astype(np.float64) @ Minv.T).astype(np.int64) % p


# --------------------------------------------------------------------------
# HPoly

class HPoly:
    """Element of Dist(T): sparse coefficients in the basis binom(H, b)."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Mapping[int, int] | None, p: int):
        self.p = p
        self.coeffs = {b: c % p for b, c in (coeffs or {}).items() if c % p}

    @classmethod
    def binom(cls, b: int, p: int) -> "HPoly":
        return cls({b: 1}, p)

    @classmethod
    def const(cls, c: int, p: int) -> "HPoly":
        return cls({0: c}, p)

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, HPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"HPoly({dict(sorted(self.coeffs.items()))}, p={self.p})"

    def __add__(self, other: "HPoly") -> "HPoly":
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out.get(b, 0) + c
        return HPoly(out, self.p)

    def __neg__(self):
        return HPoly({b: -c for b, c in self.coeffs.items()}, self.p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: int) -> "HPoly":
        return HPoly({b: c * s for b, c in self.coeffs.items()}, self.p)

    def __mul__(self, other):
        if isinstance(other, HPoly):
            return h_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __call__(self, n: int) -> int:
        return eval_h(self, n)

    def shift(self, s: int) -> "HPoly":
        """h(H + s) in the binomial basis."""
        out: dict[int, int] = defaultdict(int)
        for b, c in self.coeffs.items():
            for k, v in binom_shift(s, b, self.p).coeffs.items():
                out[k] += c * v
        return HPoly(out, self.p)

    def substitute_scaled(self, a: int) -> "HPoly":
        """h(a*H), recovered by interpolation on 0..deg."""
        if not self.coeffs:
            return self
        D = self.degree
        return interpolate_h([eval_h(self, a * n) for n in range(D + 1)], self.p)

    def to_dist(self) -> "DistElem":
        return DistElem({(0, b, 0): c for b, c in self.coeffs.items()}, self.p)


def eval_h(h: HPoly, n: int) -> int:
    return sum(c * binom_mod_p(n, b, h.p) for b, c in h.coeffs.items()) % h.p


def interpolate_h(values: Iterable[int], p: int) -> HPoly:
    """The unique HPoly of support <= D taking ``values`` at H = 0..D.

    Forward differences solve the unitriangular system binom(n, s).
    """
    vals = [v % p for v in values]
    coeffs = {}
    for s in range(len(vals)):
        acc = 0
        for t in range(s + 1):
            term = binom_mod_p(s, t, p) * vals[t]
            acc += -term if (s - t) % 2 else term
        coeffs[s] = acc
    return HPoly(coeffs, p)


def h_mul(x: HPoly, y: HPoly) -> HPoly:
    """Product in Dist(T), by evaluation at H = 0..deg x + deg y."""
    if not x.coeffs or not y.coeffs:
        return HPoly({}, x.p)
    D = x.degree + y.degree
    return interpolate_h([eval_h(x, n) * eval_h(y, n) for n in range(D + 1)], x.p)


def binom_shift(l: int, r: int, p: int) -> HPoly:
    """binom(H + l, r) = sum_{s+q=r} binom(l, q) binom(H, s)."""
    return HPoly({s: binom_mod_p(l, r - s, p) for s in range(r + 1)}, p)


def weight_shift_conjugate(h: HPoly, byE: int = 0, byF: int = 0) -> HPoly:
    """h(H + 2 byE) or h(H - 2 byF): the H-part after moving past E^[byE] / F^[byF]."""
    if byE and byF:
        raise ValueError("at most one of byE, byF may be nonzero")
    return h.shift(2 * byE - 2 * byF)


# --------------------------------------------------------------------------
# DistElem

class DistElem:
    """Sparse F_p-combination of PBW monomials (a, b, c) = E^[a] binom(H,b) F^[c].

    Treat instances as immutable.
    """

    __slots__ = ("terms", "p")

    def __init__(self, terms: Mapping[Monomial, int] | None, p: int):
        self.p = p
        self.terms = {m: c % p for m, c in (terms or {}).items() if c % p}

    # constructors
    @classmethod
    def zero(cls, p):
        return cls({}, p)

    @classmethod
    def one(cls, p):
        return cls({(0, 0, 0): 1}, p)

    @classmethod
    def scalar(cls, c, p):
        return cls({(0, 0, 0): c}, p)

    @classmethod
    def monomial(cls, a: int, b: int, c: int, p: int, coeff: int = 1):
        return cls({(a, b, c): coeff}, p)

    @classmethod
    def E(cls, n, p):
        return cls({(n, 0, 0): 1}, p)

    @classmethod
    def F(cls, n, p):
        return cls({(0, 0, n): 1}, p)

    @classmethod
    def H(cls, p):
        return cls({(0, 1, 0): 1}, p)

    @classmethod
    def binomH(cls, b, p):
        return cls({(0, b, 0): 1}, p)

    # structure
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, DistElem):
            return self.p == other.p and self.terms == other.terms
        if isinstance(other, int):
            return self == DistElem.scalar(other, self.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __repr__(self):
        return f"DistElem({to_text(self)!r}, p={self.p})"

    def __str__(self):
        return to_text(self)

    def __add__(self, other):
        if isinstance(other, int):
            other = DistElem.scalar(other, self.p)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return DistElem(out, self.p)

    __radd__ = __add__

    def __neg__(self):
        return DistElem({m: -c for m, c in self.terms.items()}, self.p)

    def __sub__(self, other):
        if isinstance(other, int):
            other = DistElem.scalar(other, self.p)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: int) -> "DistElem":
        return DistElem({m: c * s for m, c in self.terms.items()}, self.p)

    def __mul__(self, other):
        if isinstance(other, DistElem):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = DistElem.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def max_index(self) -> int:
        return max((max(m) for m in self.terms), default=0)

    def h_part(self) -> HPoly:
        """The HPoly if this element lies in Dist(T), else ValueError."""
        if any(a or c for a, _, c in self.terms):
            raise ValueError("element is not in Dist(T)")
        return HPoly({b: v for (_, b, _), v in self.terms.items()}, self.p)


def _group(x: DistElem) -> dict[tuple[int, int], dict[int, int]]:
    groups: dict[tuple[int, int], dict[int, int]] = defaultdict(dict)
    for (a, b, c), v in x.terms.items():
        groups[a, c][b] = v
    return groups


def mul(x: DistElem, y: DistElem) -> DistElem:
    """Product in PBW normal form (E, then H, then F).

    F^[c1] E^[a2] is straightened with
        F^[c] E^[a] = sum_j (-1)^j E^[a-j] binom(H + a + c - j - 1, j) F^[c-j],
    the image of the E^[b]F^[a] commutation rule under E <-> F, H -> -H.
    H-parts are then pushed outwards (h(H) E^[n] = E^[n] h(H + 2n),
    F^[n] h(H) = h(H + 2n) F^[n]) and multiplied pointwise on Z/p^R.
    """
    if x.p != y.p:
        raise ValueError("mixed primes")
    p = x.p
    if not x.terms or not y.terms:
        return DistElem.zero(p)
    if len(x.terms) == 1 and len(y.terms) == 1:
        (m1, v1), = x.terms.items()
        (m2, v2), = y.terms.items()
        return _mul_monomials(m1, m2, p).scale(v1 * v2)
    return _mul_general(x, y)


@lru_cache(maxsize=1 << 17)
def _mul_monomials(m1: Monomial, m2: Monomial, p: int) -> DistElem:
    return _mul_general(DistElem({m1: 1}, p), DistElem({m2: 1}, p))


def _mul_general(x: DistElem, y: DistElem) -> DistElem:
    p = x.p
    N = torus_size(max(x.max_index(), y.max_index()), p)
    gx = {k: _to_values(v, N, p) for k, v in _group(x).items()}
    gy = {k: _to_values(v, N, p) for k, v in _group(y).items()}
    acc: dict[tuple[int, int], np.ndarray] = {}
    for (a1, c1), v1 in gx.items():
        for (a2, c2), v2 in gy.items():
            for j in range(min(c1, a2) + 1):
                s = binom_mod_p(a1 + a2 - j, a1, p) * binom_mod_p(c1 + c2 - j, c2, p)
                if s % p == 0:
                    continue
                if j % 2:
                    s = -s
                vec = np.roll(v1, -2 * (a2 - j)) * np.roll(v2, -2 * (c1 - j)) % p
                vec = vec * _shifted_binom(j, (c1 + a2 - j - 1) % N, N, p) % p
                key = (a1 + a2 - j, c1 + c2 - j)
                vec = vec * (s % p)
                if key in acc:
                    acc[key] = (acc[key] + vec) % p
                else:
                    acc[key] = vec % p
    if not acc:
        return DistElem.zero(p)
    keys = list(acc)
    coeffs = _from_values_batch(np.stack([acc[k] for k in keys]), N, p)
    terms = {}
    for (a, c), row in zip(keys, coeffs):
        for b in np.flatnonzero(row):
            terms[a, int(b), c] = int(row[b])
    return DistElem(terms, p)


def anti_flip(x: DistElem) -> DistElem:
    """The anti-automorphism fixing E, F and sending H to -H."""
    p = x.p
    out = DistElem.zero(p)
    for (a, b, c), v in x.terms.items():
        # binom(-H, b) = (-1)^b binom(H + b - 1, b)
        h = binom_shift(b - 1, b, p).scale(-1 if b % 2 else 1)
        out = out + (DistElem.F(c, p) * h.to_dist() * DistElem.E(a, p)).scale(v)
    return out


# --------------------------------------------------------------------------
# serialization

def to_records(x: DistElem) -> list[dict]:
    return [{"a": a, "b": b, "c": c, "coeff": v} for (a, b, c), v in sorted(x.terms.items())]


def from_records(records: Iterable[Mapping], p: int) -> DistElem:
    terms: dict[Monomial, int] = defaultdict(int)
    for r in records:
        terms[int(r["a"]), int(r["b"]), int(r["c"])] += int(r["coeff"])
    return DistElem(terms, p)


def _monomial_text(a: int, b: int, c: int) -> str:
    parts = []
    if a:
        parts.append(f"E[{a}]")
    if b == 1:
        parts.append("H")
    elif b:
        parts.append(f"binom(H,{b})")
    if c:
        parts.append(f"F[{c}]")
    return "*".join(parts) or "1"


def to_text(x: DistElem) -> str:
    """Expression text that the CLI parser reads back to the same element."""
    if not x.terms:
        return "0"
    chunks = []
    for (a, b, c), v in sorted(x.terms.items()):
        mono = _monomial_text(a, b, c)
        if v == 1:
            chunks.append(mono)
        elif mono == "1":
            chunks.append(str(v))
        else:
            chunks.append(f"{v}*{mono}")
    return " + ".join(chunks)


def make(p: int) -> "Builder":
    return Builder(check_prime(p))


class Builder:
    """Shorthand constructors bound to one prime."""

    def __init__(self, p: int):
        self.p = p

    def E(self, n=1):
        return DistElem.E(n, self.p)

    def F(self, n=1):
        return DistElem.F(n, self.p)

    @property
    def H(self):
        return DistElem.H(self.p)

    def binomH(self, b):
        return DistElem.binomH(b, self.p)

    def mono(self, a, b, c):
        return DistElem.monomial(a, b, c, self.p)

    @property
    def one(self):
        return DistElem.one(self.p)
