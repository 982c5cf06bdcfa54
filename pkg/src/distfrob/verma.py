"""Baby Verma modules Z_r(lambda), Weyl modules V(n), and linear algebra over F_p.

The Weyl-module matrices use only closed-form actions of E^[a], binom(H, b)
and F^[c]; they never call the straightening code, so they serve as an
independent oracle for :func:`distfrob.pbw.mul`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import binom_int, binom_mod_p
from .frobsplit import level_generators
from .norm import delta_dist
from .pbw import DistElem, Monomial


# --------------------------------------------------------------------------
# F_p linear algebra

def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.flatnonzero(R[:, c])
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def column_space(A: np.ndarray, p: int) -> np.ndarray:
    """Echelonized basis (as rows) of the span of the columns of A."""
    return rref(np.asarray(A).T, p)[0]


def null_space(A: np.ndarray, p: int) -> np.ndarray:
    """Echelonized basis (as rows) of {v : A v = 0}."""
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[1]
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for row, c in zip(R, piv):
            v[c] = -row[f] % p
        basis.append(v)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return rref(np.array(basis), p)[0]


def same_subspace(U: np.ndarray, V: np.ndarray, p: int) -> bool:
    """Row spans agree (reduced echelon forms are unique)."""
    U, V = np.atleast_2d(U), np.atleast_2d(V)
    if U.shape[0] == 0 or V.shape[0] == 0:
        return not (U % p).any() and not (V % p).any()
    return np.array_equal(rref(U, p)[0], rref(V, p)[0])


# --------------------------------------------------------------------------
# Weyl modules

def _weyl_entry(mono: Monomial, n: int, i: int) -> tuple[int, int] | None:
    """E^[a] binom(H,b) F^[c] w_i = value * w_target over Z, or None."""
    a, b, c = mono
    k = i + c
    if k > n or a > k:
        return None
    value = binom_int(k, i) * binom_int(n - 2 * k, b) * binom_int(n + a - k, a)
    return k - a, value


def weyl_matrix(x: DistElem, n: int) -> np.ndarray:
    """Matrix of x on V(n) (basis w_0..w_n), reduced mod p from exact integers."""
    p = x.p
    M = np.zeros((n + 1, n + 1), dtype=np.int64)
    for mono, coeff in x.terms.items():
        for i in range(n + 1):
            hit = _weyl_entry(mono, n, i)
            if hit:
                M[hit[0], i] = (M[hit[0], i] + coeff * (hit[1] % p)) % p
    return M


class WeylStack:
    """All of V(0) + ... + V(nmax) at once, for fast bulk oracle checks.

    Weight-homogeneous elements act by a single shift i -> i + c - a, so an
    element is stored as one value per basis vector plus that shift.
    """

    def __init__(self, nmax: int, p: int):
        self.p, self.nmax = p, nmax
        pairs = [(n, i) for n in range(nmax + 1) for i in range(n + 1)]
        self.n = np.array([q[0] for q in pairs], dtype=np.int64)
        self.i = np.array([q[1] for q in pairs], dtype=np.int64)
        self.offset = self.n * (self.n + 1) // 2
        self.size = len(pairs)
        # tops n - 2k and n + a - k stay inside this window for indices <= 4 nmax
        self._lo, self._top = -8 * nmax - 8, 8 * nmax + 8
        self._table: dict[int, np.ndarray] = {}

    def _binom(self, tops: np.ndarray, k: int) -> np.ndarray:
        tab = self._table.get(k)
        if tab is None:
            tab = np.array([binom_mod_p(t, k, self.p) for t in range(self._lo, self._top + 1)],
                           dtype=np.int64)
            self._table[k] = tab
        return tab[tops - self._lo]

    def action(self, x: DistElem) -> tuple[int, np.ndarray]:
        """(shift, values) with x w_(n,i) = values[(n,i)] w_(n, i + shift)."""
        shifts = {c - a for a, _, c in x.terms}
        if len(shifts) > 1:
            raise ValueError("element is not weight-homogeneous")
        shift = shifts.pop() if shifts else 0
        vals = np.zeros(self.size, dtype=np.int64)
        for (a, b, c), coeff in x.terms.items():
            k = self.i + c
            ok = (k <= self.n) & (a <= k)
            kk = np.where(ok, k, 0)
            v = self._binom(kk, c)
            v = v * self._binom(self.n - 2 * kk, b) % self.p
            v = v * self._binom(self.n + a - kk, a) % self.p
            vals = (vals + coeff * np.where(ok, v, 0)) % self.p
        return shift, vals

    def compose(self, sx: int, vx: np.ndarray, sy: int, vy: np.ndarray) -> np.ndarray:
        """Values of (x y) from the actions of x and y."""
        tgt = self.i + sy
        ok = (tgt >= 0) & (tgt <= self.n)
        idx = np.where(ok, self.offset + tgt, 0)
        return np.where(ok, vy * vx[idx] % self.p, 0)


# --------------------------------------------------------------------------
# baby Verma modules

@dataclass(frozen=True)
class BabyVerma:
    """Z_r(lambda): basis w_c = F^[c] v, 0 <= c < p^r, highest weight lambda."""

    p: int
    r: int
    weight: int

    @property
    def dim(self) -> int:
        return self.p**self.r

    def eigenvalues(self) -> list[int]:
        return [(self.weight - 2 * c) % self.p for c in range(self.dim)]


def _verma_monomial_matrix(Z: BabyVerma, mono: Monomial) -> np.ndarray:
    a, b, c = mono
    p, N, lam = Z.p, Z.dim, Z.weight
    if max(mono) >= N:
        raise ValueError(f"{mono} lies outside the level of Z_{Z.r}")
    M = np.zeros((N, N), dtype=np.int64)
    for col in range(N):
        k = col + c
        if k >= N:
            continue
        v = binom_mod_p(k, c, p) * binom_mod_p(lam - 2 * k, b, p) % p
        if a > k:
            continue
        v = v * binom_mod_p(lam + a - k, a, p) % p
        M[k - a, col] = v
    return M


def verma_matrix(x: DistElem, Z: BabyVerma) -> np.ndarray:
    M = np.zeros((Z.dim, Z.dim), dtype=np.int64)
    for mono, coeff in x.terms.items():
        M = (M + coeff * _verma_monomial_matrix(Z, mono)) % Z.p
    return M


def act_verma(x: DistElem, v: np.ndarray, Z: BabyVerma) -> np.ndarray:
    return verma_matrix(x, Z) @ np.asarray(v, dtype=np.int64) % Z.p


def delta_image(Z: BabyVerma) -> np.ndarray:
    """Echelon basis of the image of v -> Delta_T v."""
    return column_space(verma_matrix(delta_dist(0, Z.p), Z), Z.p)


def joint_kernel(Z: BabyVerma, strict: bool = False) -> np.ndarray:
    """Vectors killed by E, F, H; ``strict`` adds every generator of the level."""
    p = Z.p
    if strict:
        ops = level_generators(Z.r - 1, p)
    else:
        ops = [DistElem.E(1, p), DistElem.F(1, p), DistElem.H(p)]
    stacked = np.vstack([verma_matrix(g, Z) for g in ops])
    return null_space(stacked, p)


def verma_summary(p: int, m: int, weight: int = -2, strict: bool = False) -> dict:
    Z = BabyVerma(p, m + 1, weight)
    image = delta_image(Z)
    kernel = joint_kernel(Z, strict)
    return {
        "p": p,
        "m": m,
        "lambda": weight,
        "dim": Z.dim,
        "eigenvalues": Z.eigenvalues(),
        "delta_image": image.tolist(),
        "joint_kernel": kernel.tolist(),
        "strict_kernel": strict,
        "equal": same_subspace(image, kernel, p),
    }
