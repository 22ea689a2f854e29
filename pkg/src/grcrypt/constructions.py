"""Samplers for the structured elements the protocols consume.

Three families of tricks, all exact and certified at construction time:

* Over Z_p[C_p^k] the p-th power of any element collapses to its
  augmentation times the identity, so augmentation 0 gives a nilpotent
  of index at most p and augmentation s != 0 gives a unit with inverse
  s^(-1) w^(p-1).
* Over Z_p[Cyclic(p*m)] the blocks g^i - g^(i+m) all have p-th power
  zero, and so does any combination of them; over Z_2[Cyclic(2*m)] the
  related sums (g^j + g^(m+j)) + g^m square to the identity.
* Appending a balancing coordinate (make_singular, embed_doubled,
  append_augmentation) turns arbitrary data into an element whose
  completion is singular with a provably large kernel, while keeping
  the data readable from the coefficients.

A NilpotencyCertificate records the verified nilpotency index t and the
kernel dimension of the completion; both rank bounds

    rank <= n (t - 1) / t      and      dim ker >= n / t

are asserted when the certificate is built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GroupMismatchError, NotInvertibleError
from .ffield import FieldMatrix, FieldVector, check_modulus
from .groupring import (
    CyclicGroup,
    ElemAbelianGroup,
    GroupRingElement,
    GroupSpec,
)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class NilpotencyCertificate:
    """Proof-of-work for a sampled nilpotent: w, its index t, kernel size."""

    element: GroupRingElement
    index: int
    kernel_dim: int

    @staticmethod
    def build(w: GroupRingElement, max_index: int) -> "NilpotencyCertificate":
        """Verify w^t = 0 for the smallest t <= max_index and bound-check it."""
        n = w.group.order
        power = GroupRingElement.identity(w.group, w.p)
        t = None
        for e in range(1, max_index + 1):
            power = power * w
            if power.is_zero():
                t = e
                break
        if t is None:
            raise NotInvertibleError(
                f"element is not nilpotent within index {max_index}"
            )
        completion = w.completion()
        rank = completion.rank()
        kernel = n - rank
        # rank A <= n (t-1)/t and dim ker A >= n/t for A^t = 0
        assert rank * t <= n * (t - 1), (rank, t, n)
        assert kernel * t >= n, (kernel, t, n)
        return NilpotencyCertificate(w, t, kernel)


def sample_nilpotent_elemabelian(p: int, k: int, seed) -> NilpotencyCertificate:
    """Uniform augmentation-0 element of Z_p[C_p^k], certified nilpotent.

    Rejection keeps the distribution uniform over the augmentation-0
    hyperplane: a full uniform draw is kept only when its coefficient
    sum vanishes mod p.
    """
    check_modulus(p)
    rng = _rng(seed)
    group = ElemAbelianGroup(p, k)
    while True:
        coeffs = rng.integers(0, p, size=group.order)
        if int(coeffs.sum()) % p == 0:
            break
    w = GroupRingElement.from_coeffs(group, p, coeffs)
    return NilpotencyCertificate.build(w, p)


def sample_invertible_elemabelian(p: int, k: int, seed) -> GroupRingElement:
    """Uniform unit of Z_p[C_p^k] (augmentation != 0), inverse verified."""
    check_modulus(p)
    rng = _rng(seed)
    group = ElemAbelianGroup(p, k)
    while True:
        coeffs = rng.integers(0, p, size=group.order)
        if int(coeffs.sum()) % p != 0:
            break
    w = GroupRingElement.from_coeffs(group, p, coeffs)
    inv = w.inverse()
    assert (w * inv).is_identity()
    return w


def make_singular(x: GroupRingElement, index: int = 0) -> GroupRingElement:
    """Subtract augmentation(x) at one listed position, zeroing the sum.

    The returned element differs from x in a single coefficient and has
    augmentation 0, hence a singular completion.  The original data is
    recoverable by the peer applying the same convention.
    """
    if not (0 <= index < x.group.order):
        raise GroupMismatchError(f"index {index} out of range for {x.group!r}")
    delta = np.zeros(x.group.order, dtype=np.int64)
    delta[index] = x.augmentation().value
    return x - GroupRingElement.from_coeffs(x.group, x.p, delta)


def sample_singular_element(group: GroupSpec, p: int, seed) -> GroupRingElement:
    """Random singular element, with a large kernel where the ring allows.

    Elementary-abelian p-rings and p | n circulants both carry elements
    vanishing at the p-th power, so a draw there has kernel dimension
    at least n/p.  Any other ring falls back to zeroing the coefficient
    sum, which promises singularity but only kernel dimension 1.
    """
    rng = _rng(seed)
    if isinstance(group, CyclicGroup) and group.order % p == 0:
        return sample_circulant_nilpotent(p, group.order // p, rng).element
    coeffs = rng.integers(0, p, size=group.order)
    return make_singular(GroupRingElement.from_coeffs(group, p, coeffs))


def sample_circulant_involution(m: int, seed) -> GroupRingElement:
    """Element w of Z_2[Cyclic(2m)] with w * w = 1.

    Built as sum over a random J of (g^j + g^(m+j)) plus g^m; each pair
    cancels in the square (characteristic 2) leaving g^(2m) = 1.
    """
    if m < 1:
        raise GroupMismatchError(f"need m >= 1, got {m}")
    rng = _rng(seed)
    group = CyclicGroup(2 * m)
    coeffs = np.zeros(2 * m, dtype=np.int64)
    members = np.nonzero(rng.integers(0, 2, size=m + 1))[0]
    for j in members:
        coeffs[j % (2 * m)] ^= 1
        coeffs[(m + j) % (2 * m)] ^= 1
    coeffs[m] ^= 1
    w = GroupRingElement.from_coeffs(group, 2, coeffs)
    assert (w * w).is_identity()
    return w


def sample_circulant_nilpotent(p: int, m: int, seed) -> NilpotencyCertificate:
    """Combination of the blocks g^i - g^(i+m) in Z_p[Cyclic(p*m)].

    Every block has p-th power g^(ip) (1 - g^(mp)) = 0, and p-th powers
    are additive in characteristic p, so any combination is nilpotent
    of index at most p.  The all-zero combination yields index 1.
    """
    check_modulus(p)
    if m < 1:
        raise GroupMismatchError(f"need m >= 1, got {m}")
    rng = _rng(seed)
    n = p * m
    group = CyclicGroup(n)
    weights = rng.integers(0, p, size=n)
    coeffs = np.zeros(n, dtype=np.int64)
    for i in range(n):
        c = int(weights[i])
        if c:
            coeffs[i] = (coeffs[i] + c) % p
            coeffs[(i + m) % n] = (coeffs[(i + m) % n] - c) % p
    w = GroupRingElement.from_coeffs(group, p, coeffs)
    return NilpotencyCertificate.build(w, p)


def embed_doubled(data, p: int) -> GroupRingElement:
    """Embed a length-m data vector into Z_p[Cyclic(p*m)] as a nilpotent.

    Coefficient layout: data[i] at position i, -data[i] at position
    i + m, zero elsewhere.  The result factors as (sum data[i] g^i)
    times (1 - g^m) and is nilpotent of index at most p; the data is
    read back verbatim from the first m coefficients.
    """
    check_modulus(p)
    arr = np.asarray(data, dtype=np.int64) % p
    m = arr.shape[0]
    if m < 1:
        raise GroupMismatchError("data must be non-empty")
    n = p * m
    coeffs = np.zeros(n, dtype=np.int64)
    coeffs[:m] = arr
    coeffs[m: 2 * m] = (coeffs[m: 2 * m] - arr) % p
    return GroupRingElement.from_coeffs(CyclicGroup(n), p, coeffs)


def extract_doubled(w: GroupRingElement, m: int) -> FieldVector:
    """Read the data vector back out of an embed_doubled element."""
    return FieldVector(w.coeffs.values[:m], w.p)


def append_augmentation(data, p: int) -> GroupRingElement:
    """Experimental: append one balancing coordinate over Cyclic(m + 1).

    Takes a length-m data vector and returns the element of
    Z_p[Cyclic(m+1)] whose last coefficient is minus the coefficient
    sum, so the augmentation vanishes and the completion is singular.
    Only the cyclic target is supported; kernel growth is not as strong
    as embed_doubled and the construction is kept for experiments.
    """
    check_modulus(p)
    arr = np.asarray(data, dtype=np.int64) % p
    m = arr.shape[0]
    if m < 1:
        raise GroupMismatchError("data must be non-empty")
    coeffs = np.zeros(m + 1, dtype=np.int64)
    coeffs[:m] = arr
    coeffs[m] = (-arr.sum()) % p
    return GroupRingElement.from_coeffs(CyclicGroup(m + 1), p, coeffs)


@dataclass(frozen=True)
class KernelPair:
    """Two large-kernel elements whose unit combination seeds a shared key."""

    x: NilpotencyCertificate
    y: NilpotencyCertificate
    combined: GroupRingElement
    combined_inverse: GroupRingElement


def sample_kernel_pair(p: int, k: int, seed) -> KernelPair:
    """Independent nilpotents x, y over Z_p[C_p^k] with x + y + 1 a unit.

    Both summands have augmentation 0, so the combination has
    augmentation 1 and p-th power equal to the identity; its inverse is
    the (p-1)-th power.
    """
    rng = _rng(seed)
    cx = sample_nilpotent_elemabelian(p, k, rng)
    cy = sample_nilpotent_elemabelian(p, k, rng)
    combined = cx.element + cy.element + GroupRingElement.identity(cx.element.group, p)
    inverse = combined ** (p - 1)
    assert (combined * inverse).is_identity()
    return KernelPair(cx, cy, combined, inverse)


def random_invertible_element(group: GroupSpec, p: int, seed, max_tries: int = 256) -> GroupRingElement:
    """Rejection-sample a unit of Z_p[group] by rank-testing completions.

    Works over any listed group; used where no structured pool applies
    (dihedral masks, invertible circulants over odd p, ...).
    """
    check_modulus(p)
    rng = _rng(seed)
    n = group.order
    for _ in range(max_tries):
        w = GroupRingElement.from_coeffs(group, p, rng.integers(0, p, size=n))
        if isinstance(group, ElemAbelianGroup) and group.p == p:
            if w.augmentation().value != 0:
                return w
            continue
        if w.completion().rank() == n:
            return w
    raise NotInvertibleError(
        f"no unit of Z_{p}[{group.describe()}] found in {max_tries} draws"
    )


def random_invertible_matrix(n: int, p: int, seed, max_tries: int = 256) -> FieldMatrix:
    """Rejection-sample an invertible n x n matrix over Z_p."""
    check_modulus(p)
    rng = _rng(seed)
    for _ in range(max_tries):
        m = FieldMatrix(rng.integers(0, p, size=(n, n)), p)
        if m.rank() == n:
            return m
    raise NotInvertibleError(f"no invertible {n}x{n} matrix over Z_{p} in {max_tries} draws")


def random_data_vector(length: int, p: int, seed) -> FieldVector:
    """Uniform data vector; the plain payload generator used by demos."""
    rng = _rng(seed)
    return FieldVector(rng.integers(0, p, size=length), p)
