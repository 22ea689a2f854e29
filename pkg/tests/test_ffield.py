import numpy as np
import pytest

from grcrypt.errors import (
    DimensionMismatchError,
    ModulusMismatchError,
    SingularMatrixError,
    ZeroInverseError,
)
from grcrypt.ffield import Fp, FieldMatrix, FieldVector, mod_inverse, solve_left


# ---------------------------------------------------------------------
# scalar arithmetic
# ---------------------------------------------------------------------

def test_mod_inverse_identity():
    assert mod_inverse(1, 7) == 1


def test_mod_inverse_small():
    assert mod_inverse(2, 5) == 3


def test_mod_inverse_101():
    # 4 * 76 = 304 = 3 * 101 + 1
    assert mod_inverse(4, 101) == 76


def test_mod_inverse_zero_rejected():
    with pytest.raises(ZeroInverseError):
        mod_inverse(0, 7)


def test_mod_inverse_exhaustive_small_primes():
    for p in (2, 3, 5, 7, 11):
        for a in range(1, p):
            assert (a * mod_inverse(a, p)) % p == 1


def test_composite_modulus_rejected():
    with pytest.raises(ModulusMismatchError):
        Fp(1, 6)


def test_fp_field_axioms_mod5():
    elems = [Fp(v, 5) for v in range(5)]
    for a in elems:
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            assert int(a - b) == (int(a) - int(b)) % 5
    for a in elems[1:]:
        assert a * a.inverse() == Fp(1, 5)


# ---------------------------------------------------------------------
# rank / kernel
# ---------------------------------------------------------------------

def test_rank_zero_matrix():
    assert FieldMatrix(np.zeros((4, 4), dtype=int), 3).rank() == 0


def test_rank_all_ones_mod2():
    assert FieldMatrix([[1, 1], [1, 1]], 2).rank() == 1


def test_rank_identity():
    for n in (1, 3, 6):
        assert FieldMatrix.identity(n, 5).rank() == n


def test_kernel_identity_empty():
    assert FieldMatrix.identity(3, 3).kernel_basis() == []


def test_kernel_all_ones_mod2():
    basis = FieldMatrix([[1, 1], [1, 1]], 2).kernel_basis()
    assert len(basis) == 1
    assert basis[0] == FieldVector([1, 1], 2)


def test_kernel_zero_matrix_full():
    basis = FieldMatrix.zeros(2, 2, 5).kernel_basis()
    assert len(basis) == 2


def test_kernel_vectors_annihilate():
    rng = np.random.default_rng(11)
    for _ in range(25):
        m = FieldMatrix(rng.integers(0, 3, size=(5, 5)), 3)
        for v in m.kernel_basis():
            assert (v @ m).is_zero()
        assert m.rank() + m.kernel_dim() == 5


# ---------------------------------------------------------------------
# inverse / det / products
# ---------------------------------------------------------------------

def test_inverse_identity():
    m = FieldMatrix.identity(4, 7)
    assert m.inverse() == m


def test_inverse_antidiagonal_mod5():
    m = FieldMatrix([[0, 2], [2, 0]], 5)
    inv = m.inverse()
    assert inv == FieldMatrix([[0, 3], [3, 0]], 5)
    assert (m @ inv).is_identity()


def test_inverse_singular_rejected():
    with pytest.raises(SingularMatrixError):
        FieldMatrix([[1, 1], [1, 1]], 2).inverse()


def test_inverse_random_roundtrip():
    rng = np.random.default_rng(5)
    found = 0
    while found < 20:
        m = FieldMatrix(rng.integers(0, 7, size=(4, 4)), 7)
        if m.rank() < 4:
            continue
        found += 1
        assert (m @ m.inverse()).is_identity()
        assert (m.inverse() @ m).is_identity()


def test_det_values():
    assert FieldMatrix.identity(3, 7).det() == Fp(1, 7)
    assert FieldMatrix([[0, 2], [2, 0]], 5).det() == Fp(1, 5)
    assert FieldMatrix([[1, 1], [1, 1]], 2).det() == Fp(0, 2)


def test_det_multiplicative():
    rng = np.random.default_rng(23)
    for _ in range(30):
        a = FieldMatrix(rng.integers(0, 5, size=(3, 3)), 5)
        b = FieldMatrix(rng.integers(0, 5, size=(3, 3)), 5)
        assert (a @ b).det() == a.det() * b.det()


def test_vec_mat_identity():
    v = FieldVector([2, 0, 4], 5)
    assert v @ FieldMatrix.identity(3, 5) == v


def test_vec_mat_frozen_values():
    assert FieldVector([1, 1], 2) @ FieldMatrix([[1, 1], [1, 1]], 2) == FieldVector([0, 0], 2)
    assert FieldVector([1, 1], 5) @ FieldMatrix([[0, 2], [2, 0]], 5) == FieldVector([2, 2], 5)


def test_vec_mat_dimension_guard():
    with pytest.raises(DimensionMismatchError):
        FieldVector([1, 2], 5) @ FieldMatrix.identity(3, 5)


def test_solve_left_recovers():
    rng = np.random.default_rng(3)
    m = FieldMatrix([[1, 2, 0], [0, 1, 1], [1, 0, 1]], 3)
    for _ in range(10):
        v = FieldVector(rng.integers(0, 3, size=3), 3)
        b = v @ m
        w = solve_left(m, b)
        assert w @ m == b


def test_immutability():
    v = FieldVector([1, 2], 5)
    with pytest.raises(AttributeError):
        v.p = 7
    assert not v.values.flags.writeable
