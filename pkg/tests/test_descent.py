import pytest

from distfrob.descent import (
    PullbackElem,
    can,
    check_can_square,
    check_prime_square,
    check_projector,
    garnier_projector,
    prime_map,
    pullback,
)
from distfrob.diffops import DiffOp, rho
from distfrob.norm import delta_dist


def test_projector_p3():
    P = garnier_projector(1, 3)
    assert P == DiffOp({(0, 0): 1, (1, 1): -1, (2, 2): 1}, 1, 3)
    assert P * P == P
    with pytest.raises(ValueError):
        garnier_projector(0, 3)


def test_norm_realizes_projector_both_conventions():
    for opposite in (False, True):
        for chart in ("t", "t'"):
            assert rho(delta_dist(0, 5), chart, 1, opposite) == garnier_projector(1, 5, chart)


def test_can_and_pullback():
    D = DiffOp({(2, 3): 1, (1, 4): 2}, 1, 3)
    assert can(D).terms == {(2, 1): 1}
    assert pullback(DiffOp({(1, 2): 1}, 0, 3)).terms == {(3, 2): 1}
    assert str(PullbackElem(0, 3)) == "0"
    with pytest.raises(ValueError):
        can(DiffOp.one(0, 3))


def test_prime_map_of_one_is_projector():
    for p in (3, 5):
        assert prime_map(DiffOp.one(0, p)) == garnier_projector(1, p)


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("m", [0, 1])
@pytest.mark.parametrize("opposite", [False, True])
def test_squares_commute(p, m, opposite):
    assert check_can_square(m, p, opposite).ok
    assert check_prime_square(m, p, opposite).ok


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1)])
def test_projector_suite(p, m):
    rep = check_projector(m, p)
    assert rep.ok, rep.to_text()
