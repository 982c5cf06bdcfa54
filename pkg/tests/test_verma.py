import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from distfrob.norm import delta_dist
from distfrob.pbw import DistElem
from distfrob.verma import (
    BabyVerma,
    WeylStack,
    act_verma,
    column_space,
    delta_image,
    joint_kernel,
    null_space,
    rref,
    same_subspace,
    verma_matrix,
    weyl_matrix,
)


def test_eigenvalues_and_generators():
    Z = BabyVerma(3, 1, -2)
    assert Z.eigenvalues() == [1, 2, 0]
    w = np.eye(3, dtype=np.int64)
    assert act_verma(DistElem.E(1, 3), w[1], Z).tolist() == [1, 0, 0]
    assert act_verma(DistElem.F(1, 3), w[2], Z).tolist() == [0, 0, 0]


@pytest.mark.parametrize("p,m", [(3, 0), (3, 1), (5, 0), (7, 0)])
def test_image_equals_kernel(p, m):
    Z = BabyVerma(p, m + 1, -2)
    assert same_subspace(delta_image(Z), joint_kernel(Z), p)


def test_ground_truth():
    assert delta_image(BabyVerma(3, 1, -2)).tolist() == [[0, 0, 1]]
    image = delta_image(BabyVerma(3, 2, -2))
    assert [list(np.flatnonzero(r)) for r in image] == [[2], [5], [8]]
    assert delta_image(BabyVerma(5, 1, -2)).shape[0] == 1


def test_strict_kernel_reading():
    # all divided powers: agrees at level 1, but is smaller at (p, m) = (3, 1)
    assert same_subspace(delta_image(BabyVerma(3, 1, -2)),
                         joint_kernel(BabyVerma(3, 1, -2), strict=True), 3)
    assert joint_kernel(BabyVerma(3, 2, -2), strict=True).shape[0] == 1


def test_weight_zero_image_contains_highest_vector():
    image = delta_image(BabyVerma(3, 1, 0))
    assert same_subspace(np.vstack([image, [1, 0, 0]]), image, 3)


def test_delta_idempotent_on_verma():
    Z = BabyVerma(5, 1, -2)
    D = verma_matrix(delta_dist(0, 5), Z)
    assert np.array_equal(D @ D % 5, D)


def test_weyl_examples():
    H = DistElem.H(3)
    assert np.array_equal(weyl_matrix(H, 2), np.diag([2, 0, 1]))
    x = DistElem.F(1, 3) * DistElem.E(1, 3)
    y = DistElem.E(1, 3) * DistElem.F(1, 3) - H
    assert np.array_equal(weyl_matrix(x, 2), weyl_matrix(y, 2))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_weyl_norm_rank(p):
    n = p
    M = weyl_matrix(delta_dist(0, p), n)
    rank = rref(M, p)[0].shape[0]
    assert rank == sum(1 for i in range(n + 1) if (n - 2 * i) % p == 0)


def test_stack_matches_dense():
    p = 5
    stack = WeylStack(8, p)
    x = DistElem({(2, 1, 3): 1, (1, 4, 2): 3}, p)
    shift, vals = stack.action(x)
    for n in range(9):
        M = weyl_matrix(x, n)
        for i in range(n + 1):
            j = i + shift
            got = vals[n * (n + 1) // 2 + i]
            assert got == (M[j, i] if 0 <= j <= n else 0)
    with pytest.raises(ValueError):
        stack.action(DistElem.E(1, p) + DistElem.F(1, p))


@settings(deadline=None, max_examples=50)
@given(st.lists(st.lists(st.integers(0, 4), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_nullity(rows):
    A = np.array(rows, dtype=np.int64)
    K = null_space(A, 5)
    r = column_space(A.T, 5).shape[0]
    assert K.shape[0] + r == 5
    assert not (A @ K.T % 5).any()


def test_outside_level_rejected():
    with pytest.raises(ValueError):
        verma_matrix(DistElem.E(3, 3), BabyVerma(3, 1, -2))
