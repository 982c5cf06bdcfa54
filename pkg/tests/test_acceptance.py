"""Acceptance criteria, one marked test each.

The Weyl-module oracle gate runs first (session fixture); every other
criterion depends on it, so a broken product fails everything downstream.
"""

import time

import numpy as np
import pytest

from distfrob.suites import FR_PRIME_WITNESS, run_suite
from distfrob.verma import BabyVerma, delta_image, joint_kernel, same_subspace

REPORTS = []


def run(name, p, **kw):
    rep = run_suite(name, p, **kw)
    REPORTS.append(rep)
    return rep


@pytest.fixture(scope="session")
def oracle_gate():
    reps = [run("weyl-oracle", p, seed=2024) for p in (3, 5, 7)]
    return reps


def _require_gate(gate):
    bad = [r.to_text() for r in gate if not r.ok]
    if bad:
        pytest.fail("Weyl oracle gate failed:\n" + "\n".join(bad))


@pytest.mark.criterion(8, "Weyl-matrix oracle gate, >= 1e4 random products per prime")
def test_oracle_gate(oracle_gate):
    for rep in oracle_gate:
        assert rep.ok, rep.to_text()
        assert rep.checked >= 10_000


@pytest.mark.criterion(1, "Dist(T) and norm identities, p in {3,5,7}, bounds 2p, < 10 s")
def test_torus_and_norm_identities(oracle_gate):
    _require_gate(oracle_gate)
    start = time.perf_counter()
    for p in (3, 5, 7):
        rep = run("torus-norm", p)
        assert rep.ok, rep.to_text()
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(2, "phi multiplicative, Fr o phi = id, level compatibility")
def test_splitting(oracle_gate):
    _require_gate(oracle_gate)
    start = time.perf_counter()
    rep = run("prop-2.2.1", 3)
    elapsed = time.perf_counter() - start
    assert rep.ok, rep.to_text()
    # exhaustive: 7^3 monomials squared, plus the other checks
    assert rep.checked >= 7**6
    assert elapsed < 120
    for p in (5, 7):
        rep = run("prop-2.2.1", p, seed=7)
        assert rep.ok, rep.to_text()
        assert rep.checked >= 2 * 10_000


@pytest.mark.criterion(3, "Fr' non-multiplicativity witness found and pinned at p = 3")
def test_fr_prime_witness(oracle_gate):
    _require_gate(oracle_gate)
    rep = run("fr-prime-witness", 3)
    assert rep.ok, rep.to_text()
    assert FR_PRIME_WITNESS == ((0, 0, 1), (1, 0, 0))


@pytest.mark.criterion(4, "can square commutes, m in {0,1}, p in {3,5}, generators up to 2p^(m+1)")
def test_can_square(oracle_gate):
    _require_gate(oracle_gate)
    for p in (3, 5):
        for m in (0, 1):
            for opposite in (False, True):
                rep = run("prop-3.1.1", p, m=m, opposite=opposite)
                assert rep.ok, rep.to_text()
                assert rep.bounds == 2 * p ** (m + 1)


@pytest.mark.criterion(5, "rho(Delta_T) is the projector on both charts, global, k <= 4p^2")
def test_projector(oracle_gate):
    _require_gate(oracle_gate)
    for p in (3, 5):
        for m in (1, 2):
            rep = run("prop-3.2.1", p, m=m)
            assert rep.ok, rep.to_text()


@pytest.mark.criterion(6, "d^[np] Pi = (d^[n])' and the phi / prime-map square, p in {3,5}, m in {0,1}")
def test_prime_square(oracle_gate):
    _require_gate(oracle_gate)
    for p in (3, 5):
        for m in (0, 1):
            for opposite in (False, True):
                rep = run("prop-3.2.2", p, m=m, opposite=opposite)
                assert rep.ok, rep.to_text()


@pytest.mark.criterion(7, "Delta_T image = joint kernel in Z_(m+1)(-2); span{w_2} at (3,0)")
def test_verma(oracle_gate):
    _require_gate(oracle_gate)
    for p, m in [(3, 0), (3, 1), (5, 0), (7, 0)]:
        rep = run("verma-3.3", p, m=m)
        assert rep.ok, rep.to_text()
        Z = BabyVerma(p, m + 1, -2)
        assert same_subspace(delta_image(Z), joint_kernel(Z), p)
    Z = BabyVerma(3, 1, -2)
    assert np.array_equal(delta_image(Z), [[0, 0, 1]])
    assert np.array_equal(joint_kernel(Z), [[0, 0, 1]])


@pytest.mark.criterion(9, "no integrality or overflow events in any suite run above")
def test_exactness():
    assert len(REPORTS) >= 30
    events = [f for r in REPORTS for f in r.failures if f["case"] == "exactness"]
    assert not events
