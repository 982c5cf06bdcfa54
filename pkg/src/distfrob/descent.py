"""Frobenius descent on P^1: Garnier's projector, Berthelot's ``can``, the
P -> P' map, and the commutative-diagram checks tying them to Fr and phi.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .arith import fraction_mod_p, q_factorial
from .diffops import (
    CHARTS,
    DiffOp,
    LevelGen,
    Poly,
    act,
    binom_t_d,
    is_global,
    poly_text,
    level_above,
    rho,
    rho_generator,
)
from .norm import delta_dist
from .report import Report


def garnier_projector(m: int, p: int, chart: str = "t", signed: bool = True) -> DiffOp:
    """sum_{r<p} (-1)^r t^r d^[r] at level m >= 1.

    ``signed=False`` gives sum t^r d^[r], which is not a projector; it is
    kept only so the two can be compared.
    """
    if m < 1:
        raise ValueError("the projector is defined for m >= 1")
    return DiffOp({(r, r): (-1) ** r if signed else 1 for r in range(p)}, m, p, chart)


@dataclass
class PullbackElem:
    """Section of F^* D^(m)_{X'}: (i, k) -> coefficient of t^i (x) d'<k>_m.

    Powers of the coordinate of X' are absorbed on the left as t^p.
    """

    m: int
    p: int
    chart: str = "t"
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {ik: c % self.p for ik, c in self.terms.items() if c % self.p}

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (i, k), c in sorted(self.terms.items()):
            coeff = poly_text(Poly.monomial(i, self.p, c))
            out.append(f"{coeff} (x) d'<{k}>")
        return " + ".join(out)


def pullback(D: DiffOp) -> PullbackElem:
    """1 (x) D for an operator D on X': t'^j d'<k> -> t^(pj) (x) d'<k>."""
    return PullbackElem(D.m, D.p, D.chart, {(D.p * j, k): c for (j, k), c in D.terms.items()})


def can(D: DiffOp) -> PullbackElem:
    """t^i d<l>_(m+1) -> t^i (x) d'<l/p>_m when p | l, else 0."""
    if D.m < 1:
        raise ValueError("can starts at level >= 1")
    p = D.p
    return PullbackElem(D.m - 1, p, D.chart,
                        {(i, l // p): c for (i, l), c in D.terms.items() if l % p == 0})


def prime_map(D: DiffOp) -> DiffOp:
    """P -> P' from level m to level m + 1.

    t^i d<n>_m -> t^(pi) sum_{r<p} (-t)^r binom(np+r, np) d<np+r>_(m+1);
    the q-factorials of n (level m) and np + r (level m + 1) coincide, and
    that ratio is checked to be a p-adic unit.
    """
    p, m = D.p, D.m
    out: dict = defaultdict(int)
    for (i, n), c in D.terms.items():
        ratio = fraction_mod_p(
            Fraction(q_factorial(n, m, p), q_factorial(n * p, m + 1, p)), p)
        for r in range(p):
            v = comb(n * p + r, n * p) * ratio
            out[p * i + r, n * p + r] += -c * v if r % 2 else c * v
    return DiffOp(out, m + 1, p, D.chart)


# --------------------------------------------------------------------------
# generators

def fr_generator(g: LevelGen, p: int) -> LevelGen | None:
    if g.n % p:
        return None
    return LevelGen(g.kind, g.n // p, g.m - 1)


def phi_generator(g: LevelGen, p: int) -> LevelGen:
    """phi(E<n>_m) = E<np>_(m+1) Delta_T, and likewise; this returns the first factor."""
    return LevelGen(g.kind, g.n * p, g.m + 1)


def rho_phi_generator(g: LevelGen, p: int, chart: str, opposite: bool = False) -> DiffOp:
    """rho_(m+1)(phi_m(g)) = rho_(m+1)(lifted g) rho_(m+1)(Delta_T)."""
    lifted = rho_generator(phi_generator(g, p), p, chart, opposite)
    norm = rho(delta_dist(0, p), chart, g.m + 1, opposite)
    return norm * lifted if opposite else lifted * norm


def generator_sweep(bound: int, m: int):
    for kind in ("E", "F", "H"):
        for n in range(bound + 1):
            yield LevelGen(kind, n, m)


# --------------------------------------------------------------------------
# diagram checks

def check_can_square(m: int, p: int, opposite: bool = False, bound: int | None = None) -> Report:
    """can(rho_(m+1)(g)) = (1 (x) rho_m)(Fr(g)) for level-(m+1) generators."""
    bound = 2 * p ** (m + 1) if bound is None else bound
    rep = Report("prop-3.1.1", p, m, bound)
    for chart in CHARTS:
        for g in generator_sweep(bound, m + 1):
            lhs = can(rho_generator(g, p, chart, opposite))
            fg = fr_generator(g, p)
            rhs = (pullback(rho_generator(fg, p, chart, opposite)) if fg
                   else PullbackElem(m, p, chart))
            rep.record(f"{chart}:{g.kind}<{g.n}>_{g.m}", lhs, rhs, lhs.terms == rhs.terms)
        # the torus images are combinations of t^l d<l>, and can maps t^(pl') d<pl'> to the
        # pullback of t'^l' d'<l'>
        for j in range(bound + 1):
            D = rho_generator(LevelGen("H", j, m + 1), p, chart, opposite)
            rep.record(f"{chart}:diagonal binom(H,{j})", sorted(D.terms),
                       "i == k", all(i == k for i, k in D.terms))
            for (l, _), c in D.terms.items():
                if l % p == 0:
                    single = DiffOp({(l, l): c}, m + 1, p, chart)
                    down = DiffOp({(l // p, l // p): c}, m, p, chart)
                    a, b = can(single), pullback(down)
                    rep.record(f"{chart}:can(t^{l} d<{l}>)", a, b, a.terms == b.terms)
    return rep


def check_projector(m: int, p: int, opposite: bool = False) -> Report:
    """rho_m(Delta_T) is Garnier's projector on both charts, and it is global."""
    rep = Report("prop-3.2.1", p, m, 4 * p * p)
    norm = delta_dist(0, p)
    images = {chart: rho(norm, chart, m, opposite) for chart in CHARTS}
    for chart in CHARTS:
        proj = garnier_projector(m, p, chart)
        rep.record(f"{chart}:rho(Delta_T)", images[chart], proj)
        rep.record(f"{chart}:idempotent", proj * proj, proj)
        for k in range(4 * p * p + 1):
            want = Poly.monomial(k, p) if k % p == 0 else Poly({}, p)
            rep.record(f"{chart}:projector on t^{k}", act(proj, Poly.monomial(k, p)), want)
        unsigned = garnier_projector(m, p, chart, signed=False)
        rep.record(f"{chart}:unsigned sum is not a projector", unsigned * unsigned, unsigned,
                   unsigned * unsigned != unsigned)
    rep.record("global section", images["t"], images["t'"], is_global(images["t"], images["t'"]))
    top = level_above(2 * p, p)
    for r in range(2 * p + 1):
        lhs = binom_t_d(r, top, p)
        rhs = DiffOp({(r, r): 1}, top, p).scale(
            pow(q_factorial(r, top, p), -1, p))
        rep.record(f"binom(t d, {r}) = t^{r} d^[{r}]", lhs, rhs)
    return rep


def check_prime_square(m: int, p: int, opposite: bool = False, bound: int | None = None) -> Report:
    """rho_(m+1)(phi_m(u)) = (rho_m(u))' and d<np>_(m+1) Pi = (d<n>_m)'."""
    bound = 2 * p if bound is None else bound
    rep = Report("prop-3.2.2", p, m, bound)
    for chart in CHARTS:
        proj = garnier_projector(m + 1, p, chart)
        rep.record(f"{chart}:(1)' = Pi", prime_map(DiffOp.one(m, p, chart)), proj)
        for n in range(bound + 1):
            lhs = DiffOp.d(n * p, m + 1, p, chart) * proj
            rep.record(f"{chart}:d<{n * p}> Pi", lhs, prime_map(DiffOp.d(n, m, p, chart)))
        for g in generator_sweep(bound, m):
            lhs = rho_phi_generator(g, p, chart, opposite)
            rhs = prime_map(rho_generator(g, p, chart, opposite))
            rep.record(f"{chart}:{g.kind}<{g.n}>_{g.m}", lhs, rhs)
    # the same identity with plain divided powers at a level above every order
    top = level_above(bound * p + p, p)
    proj = garnier_projector(top, p)
    for n in range(bound + 1):
        lhs = DiffOp.divided(n * p, top, p) * proj
        rhs = prime_map(DiffOp.divided(n, top - 1, p))
        rep.record(f"d^[{n * p}] Pi (level {top})", lhs, rhs)
    return rep
