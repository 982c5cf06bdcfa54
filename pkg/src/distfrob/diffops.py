"""Level-m divided-power differential operators on the two charts of P^1.

A :class:`DiffOp` is a sparse combination of t^i d<k>_m where
d<k>_m = q_k! d^[k] and k = q_k p^m + r.  Arithmetic happens mod p with the
level-m structure constants.  Anything that needs the operator over Z
(chart changes, images of divided-power generators) goes through
:class:`ZOp`, an exact integer operator in the plain d^[k] basis, and comes
back with an explicit p-integrality check.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Mapping

from .arith import (
    IntegralityError,
    binom_int,
    binom_mod_p,
    falling_ratio_mod_p,
    fraction_mod_p,
    level_binom,
    level_q,
    q_factorial,
)
from .pbw import DistElem, anti_flip

CHARTS = ("t", "t'")


def other_chart(chart: str) -> str:
    return CHARTS[1 - CHARTS.index(chart)]


def level_above(order: int, p: int) -> int:
    """Smallest m with p^m > order ("level infinity" for that order)."""
    m = 0
    while p**m <= order:
        m += 1
    return m


# --------------------------------------------------------------------------
# polynomials on a chart

class Poly:
    """Laurent polynomial mod p; exponent -> coefficient."""

    __slots__ = ("terms", "p")

    def __init__(self, terms: Mapping[int, int] | None, p: int):
        self.p = p
        self.terms = {e: c % p for e, c in (terms or {}).items() if c % p}

    @classmethod
    def monomial(cls, e: int, p: int, coeff: int = 1) -> "Poly":
        return cls({e: coeff}, p)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.p)

    def scale(self, s: int) -> "Poly":
        return Poly({e: c * s for e, c in self.terms.items()}, self.p)

    def pullback(self) -> "Poly":
        """f(t) -> f(t^p)."""
        return Poly({e * self.p: c for e, c in self.terms.items()}, self.p)

    def __repr__(self):
        return f"Poly({poly_text(self)!r}, p={self.p})"


def poly_text(f: Poly) -> str:
    if not f.terms:
        return "0"
    out = []
    for e, c in sorted(f.terms.items()):
        mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
        out.append(mono if c == 1 and mono != "1" else (str(c) if mono == "1" else f"{c}*{mono}"))
    return " + ".join(out)


# --------------------------------------------------------------------------
# DiffOp

class DiffOp:
    """Sparse combination of t^i d<k>_m on one chart; i < 0 marks a pole."""

    __slots__ = ("terms", "m", "p", "chart")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None, m: int, p: int,
                 chart: str = "t"):
        if chart not in CHARTS:
            raise ValueError(f"unknown chart {chart!r}")
        self.m, self.p, self.chart = m, p, chart
        self.terms = {ik: c % p for ik, c in (terms or {}).items() if c % p}

    @classmethod
    def one(cls, m, p, chart="t"):
        return cls({(0, 0): 1}, m, p, chart)

    @classmethod
    def t(cls, m, p, chart="t", power=1):
        return cls({(power, 0): 1}, m, p, chart)

    @classmethod
    def d(cls, k, m, p, chart="t"):
        """d<k>_m."""
        return cls({(0, k): 1}, m, p, chart)

    @classmethod
    def divided(cls, k, m, p, chart="t"):
        """Plain divided power d^[k] = d<k>_m / q_k!  (q_k must be < p)."""
        return cls({(0, k): fraction_mod_p(Fraction(1, q_factorial(k, m, p)), p)}, m, p, chart)

    def _same(self, other: "DiffOp"):
        if (self.m, self.p, self.chart) != (other.m, other.p, other.chart):
            raise ValueError("operators live on different charts or levels")

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (self.m, self.p, self.chart, self.terms) == (other.m, other.p, other.chart, other.terms)

    def __hash__(self):
        return hash((self.m, self.p, self.chart, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._same(other)
        out = dict(self.terms)
        for ik, c in other.terms.items():
            out[ik] = out.get(ik, 0) + c
        return DiffOp(out, self.m, self.p, self.chart)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: int) -> "DiffOp":
        return DiffOp({ik: c * s for ik, c in self.terms.items()}, self.m, self.p, self.chart)

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __call__(self, f: Poly) -> Poly:
        return act(self, f)

    @property
    def order(self) -> int:
        return max((k for _, k in self.terms), default=0)

    @property
    def has_poles(self) -> bool:
        return any(i < 0 for i, _ in self.terms)

    def __repr__(self):
        return f"DiffOp({diffop_text(self)!r}, m={self.m}, p={self.p}, chart={self.chart!r})"

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "level": self.m,
            "terms": [{"i": i, "k": k, "coeff": c} for (i, k), c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping, p: int) -> "DiffOp":
        terms: dict = defaultdict(int)
        for t in data["terms"]:
            terms[int(t["i"]), int(t["k"])] += int(t["coeff"])
        return cls(terms, int(data["level"]), p, data.get("chart", "t"))


def diffop_text(D: DiffOp) -> str:
    if not D.terms:
        return "0"
    var = D.chart
    out = []
    for (i, k), c in sorted(D.terms.items()):
        parts = []
        if i:
            parts.append(var if i == 1 else f"{var}^{i}")
        if k:
            parts.append(f"d<{k}>")
        mono = "*".join(parts) or "1"
        out.append(mono if c == 1 else (str(c) if mono == "1" else f"{c}*{mono}"))
    return " + ".join(out)


def act(D: DiffOp, f: Poly) -> Poly:
    """d<k>_m t^j = q_k! binom(j, k) t^(j-k)."""
    p = D.p
    out: dict[int, int] = defaultdict(int)
    for (i, k), c in D.terms.items():
        qk = q_factorial(k, D.m, p) % p
        if not qk:
            continue
        for j, v in f.terms.items():
            if j >= 0 and k > j:
                continue
            b = binom_mod_p(j, k, p)
            if b:
                out[i + j - k] += c * v * qk * b
    return Poly(out, p)


def mul(D1: DiffOp, D2: DiffOp) -> DiffOp:
    """Composition D1 D2 in the level-m ring.

    d<k> t^j = sum_l (q_k!/q_{k-l}!) binom(j, l) t^(j-l) d<k-l>, and
    d<a> d<b> = <a+b choose a>_m d<a+b>.
    """
    D1._same(D2)
    p, m = D1.p, D1.m
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (i1, k1), c1 in D1.terms.items():
        for (i2, k2), c2 in D2.terms.items():
            for key, v in _basis_product(i1, k1, i2, k2, m, p):
                out[key] += c1 * c2 * v
    return DiffOp(out, m, p, D1.chart)


@lru_cache(maxsize=1 << 18)
def _basis_product(i1, k1, i2, k2, m, p):
    out = []
    top = k1 if i2 < 0 else min(k1, i2)
    for l in range(top + 1):
        v = falling_ratio_mod_p(k1, l, m, p) * binom_mod_p(i2, l, p) % p
        if not v:
            continue
        v = v * level_binom(k1 - l + k2, k1 - l, m, p) % p
        if v:
            out.append(((i1 + i2 - l, k1 - l + k2), v))
    return tuple(out)


def raise_level(D: DiffOp) -> DiffOp:
    """d<k>_m -> (q_k^(m)! / q_k^(m+1)!) d<k>_(m+1)."""
    p, m = D.p, D.m
    return DiffOp(
        {(i, k): c * (q_factorial(k, m, p) // q_factorial(k, m + 1, p))
         for (i, k), c in D.terms.items()},
        m + 1, p, D.chart,
    )


# --------------------------------------------------------------------------
# exact integer operators in the d^[k] basis

@dataclass
class ZOp:
    """Operator over Z: (i, k) -> integer coefficient of t^i d^[k]."""

    terms: dict

    def __post_init__(self):
        self.terms = {ik: c for ik, c in self.terms.items() if c}

    def __mul__(self, other: "ZOp") -> "ZOp":
        out: dict = defaultdict(int)
        for (i1, k1), c1 in self.terms.items():
            for (i2, k2), c2 in other.terms.items():
                top = k1 if i2 < 0 else min(k1, i2)
                for l in range(top + 1):
                    out[i1 + i2 - l, k1 - l + k2] += (
                        c1 * c2 * binom_int(i2, l) * comb(k1 - l + k2, k2)
                    )
        return ZOp(dict(out))

    def __add__(self, other: "ZOp") -> "ZOp":
        out = defaultdict(int, self.terms)
        for ik, c in other.terms.items():
            out[ik] += c
        return ZOp(dict(out))

    def scale(self, s: int) -> "ZOp":
        return ZOp({ik: c * s for ik, c in self.terms.items()})

    def act_monomial(self, j: int) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for (i, k), c in self.terms.items():
            if j >= 0 and k > j:
                continue
            out[i + j - k] += c * binom_int(j, k)
        return {e: v for e, v in out.items() if v}

    @property
    def order(self) -> int:
        return max((k for _, k in self.terms), default=0)


def zop_from_action(action: Callable[[int], Mapping[int, int]], order: int,
                    check: range | None = None) -> ZOp:
    """Recover sum_k d_k(t) d^[k] from its action on t^0..t^order.

    D t^s = sum_k d_k(t) binom(s, k) t^(s-k), unitriangular in k.  The
    result is re-applied on ``check`` and any mismatch raises.
    """
    coeffs: list[dict[int, int]] = []
    for s in range(order + 1):
        rem = defaultdict(int, action(s))
        for k, dk in enumerate(coeffs):
            b = comb(s, k)
            for e, v in dk.items():
                rem[e + s - k] -= b * v
        coeffs.append({e: v for e, v in rem.items() if v})
    z = ZOp({(e, k): v for k, dk in enumerate(coeffs) for e, v in dk.items()})
    for s in check or ():
        got = z.act_monomial(s)
        want = {e: v for e, v in action(s).items() if v}
        if got != want:
            raise ArithmeticError(f"action window too small: mismatch on t^{s}")
    return z


def to_level(z: ZOp, m: int, p: int, chart: str = "t") -> DiffOp:
    """Read an integral operator in the level-m basis, asserting p-integrality."""
    terms = {}
    for (i, k), c in z.terms.items():
        terms[i, k] = fraction_mod_p(Fraction(c, q_factorial(k, m, p)), p)
    return DiffOp(terms, m, p, chart)


def lift(D: DiffOp) -> ZOp:
    """Integer representative of D in the d^[k] basis (coefficients lifted to 0..p-1)."""
    return ZOp({(i, k): c * q_factorial(k, D.m, D.p) for (i, k), c in D.terms.items()})


# --------------------------------------------------------------------------
# realization of Dist(SL2)

@lru_cache(maxsize=4096)
def _e_power(n: int) -> ZOp:
    return ZOp({(0, n): 1})


@lru_cache(maxsize=4096)
def _f_power(n: int) -> ZOp:
    """(-t^2 d)^n / n!, solved from its action t^j -> (-1)^n binom(j+n-1, n) t^(j+n)."""
    sign = -1 if n % 2 else 1

    def action(j):
        return {j + n: sign * binom_int(j + n - 1, n)}

    return zop_from_action(action, n, check=range(n + 1, n + 4))


@lru_cache(maxsize=4096)
def _h_binom(b: int, sign: int) -> ZOp:
    """binom(sign * 2 t d, b): degree-preserving, t^j -> binom(2 sign j, b) t^j."""

    def action(j):
        return {j: binom_int(2 * sign * j, b)}

    return zop_from_action(action, b, check=range(b + 1, b + 4))


def _generator_zop(kind: str, n: int, chart: str, opposite: bool) -> ZOp:
    # chart t: E -> d, F -> -t^2 d, H -> -2 t d; chart t' swaps E and F and H -> 2 t' d'
    h_sign = -1 if chart == "t" else 1
    if opposite:
        h_sign = -h_sign
    if kind == "H":
        return _h_binom(n, h_sign)
    if (kind == "E") == (chart == "t"):
        return _e_power(n)
    return _f_power(n)


@dataclass(frozen=True)
class LevelGen:
    """Level-m generator E<n>_m = q_n! E^[n], F<n>_m, or binom(H, n)_m = q_n! binom(H, n)."""

    kind: str
    n: int
    m: int

    def q(self, p: int) -> int:
        return level_q(self.n, self.m, p)

    def to_dist(self, p: int) -> DistElem:
        a, b, c = {"E": (self.n, 0, 0), "H": (0, self.n, 0), "F": (0, 0, self.n)}[self.kind]
        return DistElem({(a, b, c): factorial(self.q(p))}, p)


def rho_generator(g: LevelGen, p: int, chart: str = "t", opposite: bool = False) -> DiffOp:
    """rho_m on a level-m generator, via the exact integer operator."""
    z = _generator_zop(g.kind, g.n, chart, opposite).scale(q_factorial(g.n, g.m, p))
    return to_level(z, g.m, p, chart)


def _rho_monomial(a, b, c, m, p, chart, opposite):
    # E^[a] = E<a>_m / q_a! with q_a < p, and likewise for b, c
    parts = [rho_generator(LevelGen(kind, n, m), p, chart, opposite).scale(
        pow(factorial(level_q(n, m, p)), -1, p)) for kind, n in (("E", a), ("H", b), ("F", c))]
    return parts[0] * parts[1] * parts[2]


def rho(x: DistElem, chart: str = "t", m: int | None = None, opposite: bool = False) -> DiffOp:
    """Realize x as a level-m operator on the given chart.

    Every index of x must be below p^(m+1).  ``m=None`` picks a level above
    the total degree, which behaves as plain divided powers.  ``opposite``
    uses H -> 2 t d (a morphism from the opposite algebra).
    """
    p = x.p
    if m is None:
        m = level_above(max((a + b + c for a, b, c in x.terms), default=0), p)
    bound = p ** (m + 1)
    if any(v >= bound for mono in x.terms for v in mono):
        raise ValueError(f"element is not in the level-{m} image")
    if opposite:
        # x -> rho(anti_flip(x)) reverses products and negates H
        x = anti_flip(x)
    out = DiffOp({}, m, p, chart)
    for (a, b, c), v in x.terms.items():
        out = out + _rho_monomial(a, b, c, m, p, chart, False).scale(v)
    return out


# --------------------------------------------------------------------------
# chart change t' = 1/t

def transform_chart(D: DiffOp, window: int | None = None) -> DiffOp:
    """The same operator written on the other chart (Laurent coefficients allowed).

    Computed over Z by triangular solve from the action on t'^s, then read
    back at level m.  The action is re-checked for -2N <= s <= 2N.
    """
    z = lift(D)
    K = z.order
    N = window if window is not None else K + 2

    def action(s):
        # t'^s = t^-s; D t^-s = sum c binom(-s, k) t^(i-s-k) = ... t'^(s+k-i)
        return {-e: v for e, v in z.act_monomial(-s).items()}

    z2 = zop_from_action(action, K, check=range(-2 * N, 2 * N + 1))
    return to_level(z2, D.m, D.p, other_chart(D.chart))


def is_global(Dt: DiffOp, Dt2: DiffOp) -> bool:
    """Dt (chart t) and Dt2 (chart t') glue to a global section."""
    if Dt.chart != "t" or Dt2.chart != "t'" or Dt.has_poles or Dt2.has_poles:
        return False
    return transform_chart(Dt) == Dt2 and transform_chart(Dt2) == Dt


def binom_t_d(r: int, m: int, p: int, chart: str = "t") -> DiffOp:
    """binom(t d, r) computed as a product of (t d - i) over Z, divided by r!."""
    td = ZOp({(1, 1): 1})
    z = ZOp({(0, 0): 1})
    for i in range(r):
        z = z * (td + ZOp({(0, 0): -i}))
    out = {}
    for ik, c in z.terms.items():
        if c % factorial(r):
            raise IntegralityError("binom(t d, r) is not integral")
        out[ik] = c // factorial(r)
    return to_level(ZOp(out), m, p, chart)
