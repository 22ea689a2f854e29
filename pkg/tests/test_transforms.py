import numpy as np
import pytest

from grcrypt.errors import PlanMismatchError
from grcrypt.groupring import (
    CyclicGroup,
    DihedralGroup,
    ElemAbelianGroup,
    GroupRingElement,
)
from grcrypt.transforms import NAIVE, NTT, TENSOR, fast_multiply, plan_for, wht


def rand_elem(group, p, rng):
    return GroupRingElement.from_coeffs(group, p, rng.integers(0, p, size=group.order))


def test_wht_base_cases():
    assert wht([1, 0]).tolist() == [1, 1]
    assert wht([1, 1]).tolist() == [2, 0]


def test_wht_involution_up_to_scale():
    rng = np.random.default_rng(4)
    v = rng.integers(-50, 50, size=16)
    assert (wht(wht(v)) == 16 * v).all()


def test_wht_matches_dense_transform():
    # H_{2^k} built by explicit tensor powers
    h = np.array([[1]])
    block = np.array([[1, 1], [1, -1]])
    for _ in range(4):
        h = np.kron(h, block)
    rng = np.random.default_rng(8)
    v = rng.integers(0, 100, size=16)
    assert (wht(v) == h @ v).all()


# ---------------------------------------------------------------------
# strategy selection
# ---------------------------------------------------------------------

def test_plan_cyclic8_uses_ntt():
    plan = plan_for(CyclicGroup(8), 3)
    assert plan.strategy == NTT
    assert plan.modulus % 8 == 1


def test_plan_elemabelian_uses_tensor():
    assert plan_for(ElemAbelianGroup(2, 10), 2).strategy == TENSOR


def test_plan_dihedral_falls_back_to_naive():
    assert plan_for(DihedralGroup(6), 3).strategy == NAIVE


def test_plan_mismatch_guard():
    plan = plan_for(CyclicGroup(8), 3)
    x = GroupRingElement.identity(CyclicGroup(4), 3)
    with pytest.raises(PlanMismatchError):
        fast_multiply(x, x, plan)


# ---------------------------------------------------------------------
# fast path agrees with plain convolution
# ---------------------------------------------------------------------

def test_identity_multiplication_any_plan():
    for group, p in ((CyclicGroup(8), 3), (ElemAbelianGroup(2, 6), 2), (DihedralGroup(4), 5)):
        plan = plan_for(group, p)
        one = GroupRingElement.identity(group, p)
        a = rand_elem(group, p, np.random.default_rng(1))
        assert fast_multiply(one, a, plan) == a


def test_tensor_path_matches_naive_z2():
    group = ElemAbelianGroup(2, 6)
    plan = plan_for(group, 2)
    assert plan.strategy == TENSOR
    rng = np.random.default_rng(42)
    for _ in range(500):
        x = rand_elem(group, 2, rng)
        a = rand_elem(group, 2, rng)
        assert fast_multiply(x, a, plan) == x * a


def test_ntt_path_matches_naive_z5():
    group = CyclicGroup(16)
    plan = plan_for(group, 5)
    assert plan.strategy == NTT
    rng = np.random.default_rng(43)
    for _ in range(500):
        x = rand_elem(group, 5, rng)
        a = rand_elem(group, 5, rng)
        assert fast_multiply(x, a, plan) == x * a


def test_tensor_path_odd_prime():
    group = ElemAbelianGroup(3, 3)
    plan = plan_for(group, 3)
    rng = np.random.default_rng(44)
    for _ in range(100):
        x = rand_elem(group, 3, rng)
        a = rand_elem(group, 3, rng)
        assert fast_multiply(x, a, plan) == x * a


def test_completion_product_matches_convolution():
    rng = np.random.default_rng(45)
    group = CyclicGroup(8)
    for _ in range(100):
        x = rand_elem(group, 3, rng)
        a = rand_elem(group, 3, rng)
        assert (x * a).completion() == x.completion() @ a.completion()
