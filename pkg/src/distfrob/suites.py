"""Named check suites.  Each returns a :class:`Report`; failures are data, not
exceptions, except that integrality or overflow errors are caught and recorded."""

from __future__ import annotations

import random
from itertools import product
from typing import Callable

import numpy as np

from .arith import IntegralityError, binom_int, binom_mod_p, check_prime
from .descent import check_can_square, check_prime_square, check_projector
from .frobsplit import (
    binom_lucas_vanishing,
    check_congruence_identity,
    find_fr_prime_witness,
    fr,
    fr_prime,
    in_level_image,
    monomials,
    phi,
)
from .norm import (
    annihilation_product,
    check_annihilation,
    check_commutes,
    check_idempotent,
    check_shift,
    delta,
    delta_alternating,
    delta_closed,
    one_minus_power,
)
from .pbw import DistElem, HPoly, binom_shift, eval_h, to_text
from .report import Report
from .verma import (
    BabyVerma,
    WeylStack,
    act_verma,
    delta_image,
    joint_kernel,
    same_subspace,
    verma_matrix,
    weyl_matrix,
)

# the pair found by find_fr_prime_witness at p = 3: F^[1] * E^[1]
FR_PRIME_WITNESS = ((0, 0, 1), (1, 0, 0))

ORACLE_SAMPLES = 10_000
PHI_SAMPLES = 10_000
EXHAUSTIVE_LIMIT = 150_000


def _mono(m, p) -> DistElem:
    return DistElem({m: 1}, p)


# --------------------------------------------------------------------------
# Dist(T) identities

def suite_binom_expansion(p: int, bound: int) -> Report:
    """binom(H + l, r) = sum binom(l, q) binom(H, s), checked by evaluation."""
    rep = Report("prop-2.1.1", p, None, bound)
    for l in range(-bound, bound + 1):
        for r in range(bound + 1):
            h = binom_shift(l, r, p)
            for k in range(2 * bound + 2):
                rep.record(f"l={l} r={r} H={k}", eval_h(h, k), binom_int(k + l, r) % p)
    return rep


def suite_shifted_expansion(p: int, bound: int) -> Report:
    """binom(H + l + m, r) = sum binom(l, q) binom(H + m, s)."""
    rep = Report("cor-2.1.2", p, None, bound)
    for l, m in product(range(-bound, bound + 1), repeat=2):
        for r in range(bound + 1):
            rhs = HPoly({}, p)
            for q in range(r + 1):
                rhs = rhs + binom_shift(m, r - q, p).scale(binom_mod_p(l, q, p))
            rep.record(f"l={l} m={m} r={r}", binom_shift(l + m, r, p), rhs)
    return rep


def suite_norm_closed_form(p: int, bound: int) -> Report:
    rep = Report("cor-2.1.3", p, None, bound)
    d0 = delta(0, p).value
    rep.record("Delta_T = binom(H-1, p-1)", d0, binom_shift(-1, p - 1, p))
    rep.record("Delta_T = 1 - H^(p-1)", d0, one_minus_power(p))
    for a in range(1, p):
        rep.record(f"Delta_T(H) = Delta_T({a}H)", d0, d0.substitute_scaled(a))
    for n in range(-bound, bound + 1):
        rep.record(f"n={n} alternating = closed", delta_alternating(n, p), delta_closed(n, p))
    return rep


def suite_norm_idempotent(p: int, bound: int) -> Report:
    rep = Report("cor-2.1.4", p, None, bound)
    for n in range(-bound, bound + 1):
        rep.record(f"n={n} idempotent", True, check_idempotent(n, p))
        d = delta(n, p).value
        for k in range(4 * p + 1):
            want = 1 if (k - 2 * n) % p == 0 else 0
            rep.record(f"n={n} value at H={k}", eval_h(d, k), want)
    return rep


def suite_norm_periodic(p: int, bound: int) -> Report:
    rep = Report("cor-2.1.5", p, None, bound)
    for n in range(-bound, bound + 1):
        rep.record(f"n={n} vs n mod p", delta(n, p).value, delta(n % p, p).value)
    return rep


def suite_norm_shift(p: int, bound: int) -> Report:
    rep = Report("prop-2.1.6", p, None, bound)
    for nmoves in range(bound + 1):
        for m in range(-bound, bound + 1):
            for byE in (True, False):
                rep.record(f"{'E' if byE else 'F'}^[{nmoves}] m={m}", True,
                           check_shift(nmoves, byE, m, p))
    return rep


def suite_norm_commutes(p: int, bound: int) -> Report:
    rep = Report("cor-2.1.7", p, None, bound)
    for n in range(bound // p + 1):
        rep.record(f"[E^[{n * p}], Delta_T] = [F^[{n * p}], Delta_T] = 0", True,
                   check_commutes(n, p))
    return rep


def suite_norm_annihilation(p: int, bound: int) -> Report:
    rep = Report("prop-2.1.8", p, None, bound)
    for n in range(-bound, bound + 1):
        for j in range(1, bound + 1):
            if j % p:
                rep.record(f"n={n} j={j}", True, check_annihilation(n, j, p))
            else:
                # multiples of p are genuinely excluded
                prod = annihilation_product(n, j, p)
                rep.record(f"n={n} j={j} nonzero", str(prod), "nonzero", bool(prod))
    return rep


NORM_SUITES: dict[str, Callable[[int, int], Report]] = {
    "prop-2.1.1": suite_binom_expansion,
    "cor-2.1.2": suite_shifted_expansion,
    "cor-2.1.3": suite_norm_closed_form,
    "cor-2.1.4": suite_norm_idempotent,
    "cor-2.1.5": suite_norm_periodic,
    "prop-2.1.6": suite_norm_shift,
    "cor-2.1.7": suite_norm_commutes,
    "prop-2.1.8": suite_norm_annihilation,
}


def suite_torus_norm(p: int, bound: int) -> Report:
    rep = Report("torus-norm", p, None, bound)
    for name in NORM_SUITES:
        rep.merge(NORM_SUITES[name](p, bound))
    return rep


# --------------------------------------------------------------------------
# the splitting

def _pairs(p: int, bound: int, seed: int, samples: int):
    monos = monomials(bound)
    if len(monos) ** 2 <= EXHAUSTIVE_LIMIT:
        return list(product(monos, monos)), True
    rng = random.Random(seed)
    return [(rng.choice(monos), rng.choice(monos)) for _ in range(samples)], False


def suite_splitting(p: int, bound: int, seed: int = 0, samples: int = PHI_SAMPLES) -> Report:
    """phi multiplicative, Fr o phi = id, Fr multiplicative, level compatibility."""
    rep = Report("prop-2.2.1", p, None, bound, seed=seed)
    monos = monomials(bound)
    for m in monos:
        x = _mono(m, p)
        rep.record(f"fr(phi({m}))", fr(phi(x)), x)
        rep.record(f"fr(fr_prime({m}))", fr(fr_prime(x)), x)
    pairs, _ = _pairs(p, bound, seed, samples)
    for m1, m2 in pairs:
        x, y = _mono(m1, p), _mono(m2, p)
        xy = x * y
        rep.record(f"phi({m1}*{m2})", phi(xy), phi(x) * phi(y))
        rep.record(f"fr({m1}*{m2})", fr(xy), fr(x) * fr(y))
        if m1[2] == 0 and m2[2] == 0 or m1[0] == 0 and m2[0] == 0:
            rep.record(f"fr_prime on a Borel half {m1}*{m2}", fr_prime(xy),
                       fr_prime(x) * fr_prime(y))
    for m in (0, 1):
        top = p ** (m + 1)
        for mono in product(range(top), repeat=3):
            if m == 1 and max(mono) < p:
                continue
            rep.record(f"level {m}: phi({mono}) in level {m + 1}", True,
                       in_level_image(phi(_mono(mono, p)), m + 1))
    for a, b in product(range(1, 3), repeat=2):
        for r in range(1, min(p * a, p * b) + 1):
            rep.record(f"congruence a={a} b={b} r={r}", True,
                       check_congruence_identity(a, b, r, p))
    for mm in range(bound + 1):
        for j in range(p * mm + 1):
            rep.record(f"Lucas binom({p * mm},{j})", True, binom_lucas_vanishing(mm, j, p))
    return rep


def suite_fr_prime_witness(p: int, bound: int = 2) -> Report:
    rep = Report("fr-prime-witness", p, None, bound)
    found = find_fr_prime_witness(p, bound)
    if found is None:
        rep.record("witness", "none", "a pair", False)
        return rep
    m1, m2, lhs, rhs = found
    rep.record(f"fr_prime({m1}*{m2}) != fr_prime({m1})*fr_prime({m2})",
               to_text(lhs), to_text(rhs), lhs != rhs)
    if p == 3:
        rep.record("pinned pair", (m1, m2), FR_PRIME_WITNESS)
    return rep


# --------------------------------------------------------------------------
# Verma modules and the Weyl oracle

def suite_verma(p: int, m: int, weight: int = -2, strict: bool = False) -> Report:
    rep = Report("verma-3.3", p, m, p ** (m + 1))
    Z = BabyVerma(p, m + 1, weight)
    image, kernel = delta_image(Z), joint_kernel(Z, strict)
    rep.record("delta image = joint kernel", image.tolist(), kernel.tolist(),
               same_subspace(image, kernel, p))
    d = verma_matrix(DistElem.binomH(0, p), Z)
    rep.record("identity acts trivially", d.tolist(), np.eye(Z.dim, dtype=np.int64).tolist(),
               np.array_equal(d, np.eye(Z.dim, dtype=np.int64)))
    if (p, m, weight) == (3, 0, -2):
        rep.record("image spanned by w_2", image.tolist(), [[0, 0, 1]])
    # module structure on monomials below p^(m+1); sampled beyond 10^3 pairs
    monos = list(product(range(Z.dim), repeat=3))
    pairs = list(product(monos, monos))
    if len(pairs) > 2000:
        rng = random.Random(0)
        pairs = [(rng.choice(monos), rng.choice(monos)) for _ in range(2000)]
    mats = {}

    def mat(mono):
        if mono not in mats:
            mats[mono] = verma_matrix(_mono(mono, p), Z)
        return mats[mono]

    for m1, m2 in pairs:
        prod_ = _mono(m1, p) * _mono(m2, p)
        lhs = verma_matrix(prod_, Z) if in_level_image(prod_, m) else None
        if lhs is None:
            rep.record(f"{m1}*{m2} stays in level {m}", to_text(prod_), "level", False)
            continue
        rep.record(f"action of {m1}*{m2}", True,
                   np.array_equal(lhs, mat(m1) @ mat(m2) % p))
    v = np.zeros(Z.dim, dtype=np.int64)
    v[0] = 1
    rep.record("E w_0 = 0", act_verma(DistElem.E(1, p), v, Z).tolist(), [0] * Z.dim)
    return rep


def suite_weyl_oracle(p: int, bound: int, seed: int = 0, samples: int = ORACLE_SAMPLES) -> Report:
    """mul(x, y) acts on every V(n), n <= 4p, as x after y."""
    rep = Report("weyl-oracle", p, None, bound, seed=seed)
    stack = WeylStack(4 * p, p)
    rng = random.Random(seed)
    cache: dict = {}

    def action(mono):
        if mono not in cache:
            cache[mono] = stack.action(_mono(mono, p))
        return cache[mono]

    for _ in range(samples):
        m1 = tuple(rng.randint(0, bound) for _ in range(3))
        m2 = tuple(rng.randint(0, bound) for _ in range(3))
        sx, vx = action(m1)
        sy, vy = action(m2)
        _, vz = stack.action(_mono(m1, p) * _mono(m2, p))
        rep.record(f"{m1}*{m2}", True, np.array_equal(vz, stack.compose(sx, vx, sy, vy)))
    # a few products against the dense per-module matrices
    for n in range(4 * p + 1):
        x = DistElem.F(1, p) * DistElem.E(1, p)
        y = DistElem.E(1, p) * DistElem.F(1, p) - DistElem.H(p)
        rep.record(f"FE = EF - H on V({n})", True,
                   np.array_equal(weyl_matrix(x, n), weyl_matrix(y, n)))
    return rep


# --------------------------------------------------------------------------
# runner

SUITES = (
    *NORM_SUITES,
    "torus-norm",
    "weyl-oracle",
    "prop-2.2.1",
    "fr-prime-witness",
    "prop-3.1.1",
    "prop-3.2.1",
    "prop-3.2.2",
    "verma-3.3",
    "all",
)


def _dispatch(name, p, m, bounds, seed, opposite, strict) -> Report:
    if name in NORM_SUITES:
        return NORM_SUITES[name](p, 2 * p if bounds is None else bounds)
    if name == "torus-norm":
        return suite_torus_norm(p, 2 * p if bounds is None else bounds)
    if name == "weyl-oracle":
        return suite_weyl_oracle(p, 2 * p if bounds is None else bounds, seed)
    if name == "prop-2.2.1":
        return suite_splitting(p, 2 * p if bounds is None else bounds, seed)
    if name == "fr-prime-witness":
        return suite_fr_prime_witness(p, 2 if bounds is None else bounds)
    if name == "prop-3.1.1":
        return check_can_square(0 if m is None else m, p, opposite, bounds)
    if name == "prop-3.2.1":
        return check_projector(1 if m is None else m, p, opposite)
    if name == "prop-3.2.2":
        return check_prime_square(0 if m is None else m, p, opposite, bounds)
    if name == "verma-3.3":
        return suite_verma(p, 0 if m is None else m, strict=strict)
    raise KeyError(name)


def run_suite(name: str, p: int, m: int | None = None, bounds: int | None = None,
              seed: int = 0, opposite: bool = False, strict: bool = False) -> Report:
    """Run one named suite (or ``all``); unknown names raise KeyError."""
    check_prime(p)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name == "all":
        rep = Report("all", p, m, bounds, seed=seed)
        for sub in SUITES:
            if sub in NORM_SUITES or sub == "all":
                continue
            rep.merge(run_suite(sub, p, m, bounds, seed, opposite, strict))
        return rep
    try:
        rep = _dispatch(name, p, m, bounds, seed, opposite, strict)
    except (IntegralityError, OverflowError) as exc:
        rep = Report(name, p, m, bounds, seed=seed)
        rep.record("exactness", type(exc).__name__, str(exc), False)
        return rep
    rep.m, rep.seed = m if rep.m is None else rep.m, seed
    if rep.bounds is None:
        rep.bounds = bounds
    return rep
