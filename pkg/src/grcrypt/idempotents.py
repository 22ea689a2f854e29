"""Complete orthogonal idempotent sets and the rank/inverse/det calculus.

For Cyclic(n) over Z_p with n dividing p - 1, the field contains a
primitive n-th root of unity w and the character combinations

    e_i = n^(-1) * sum_j w^(-i*j) g^j

form a complete orthogonal set: each e_i is a nonzero idempotent, the
products of distinct members vanish, and the set sums to the identity.
Each completion E_i then has rank 1 (rank of an idempotent equals its
trace), and combinations sum(a_i E_i) obey closed forms:

    rank = sum of rank E_i over nonzero a_i
    inverse = sum(a_i^(-1) E_i)        (exists iff every a_i != 0)
    det = product of a_i^rank(E_i)     (zero iff some a_i = 0)

split_keypair carves such a set into two disjoint supports; the two
halves multiply to zero, which is what the public-key scheme builds on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadSplitError, NoRootOfUnityError, NotInvertibleError
from .ffield import FieldMatrix, Fp, check_modulus, mod_inverse
from .groupring import CyclicGroup, GroupRingElement, GroupSpec


def primitive_root_of_unity(n: int, p: int) -> int:
    """A primitive n-th root of unity in Z_p; NoRootOfUnityError if none."""
    check_modulus(p)
    if n < 1 or (p - 1) % n != 0:
        raise NoRootOfUnityError(f"Z_{p} has no primitive {n}-th root of unity")
    # an element of order n exists; scan for one with exact order
    for candidate in range(2, p):
        if pow(candidate, n, p) != 1:
            continue
        if all(pow(candidate, n // f, p) != 1 for f in _prime_divisors(n)):
            return candidate
    if n == 1:
        return 1
    raise NoRootOfUnityError(f"no element of order {n} found in Z_{p}")


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class IdempotentSet:
    """A verified complete orthogonal set with cached completions and ranks."""

    group: GroupSpec
    p: int
    elements: tuple[GroupRingElement, ...]
    completions: tuple[FieldMatrix, ...]
    ranks: tuple[int, ...]

    def __len__(self):
        return len(self.elements)


def cyclic_idempotent_set(n: int, p: int) -> IdempotentSet:
    """The n character idempotents of Z_p[Cyclic(n)]; requires n | p - 1."""
    root = primitive_root_of_unity(n, p)
    group = CyclicGroup(n)
    n_inv = mod_inverse(n % p, p)
    root_inv = mod_inverse(root, p)
    elements = []
    for i in range(n):
        coeffs = np.array(
            [n_inv * pow(root_inv, (i * j) % n, p) % p for j in range(n)],
            dtype=np.int64,
        )
        elements.append(GroupRingElement.from_coeffs(group, p, coeffs))
    made = _finish_set(group, p, elements)
    verify_complete_orthogonal(made)
    return made


def _finish_set(group, p, elements) -> IdempotentSet:
    completions = tuple(e.completion() for e in elements)
    ranks = tuple(c.rank() for c in completions)
    for c, r in zip(completions, ranks):
        # rank of an idempotent completion equals its trace
        assert Fp(r, p) == c.trace()
    return IdempotentSet(group, p, tuple(elements), completions, ranks)


def idempotent_set_from_elements(elements: list[GroupRingElement]) -> IdempotentSet:
    """Wrap and verify caller-supplied idempotents as a complete set."""
    if not elements:
        raise BadSplitError("empty idempotent set")
    made = _finish_set(elements[0].group, elements[0].p, list(elements))
    verify_complete_orthogonal(made)
    return made


def verify_complete_orthogonal(s: IdempotentSet) -> None:
    """Check nonzero, idempotent, pairwise orthogonal, summing to 1."""
    total = GroupRingElement.zero(s.group, s.p)
    for i, e in enumerate(s.elements):
        if e.is_zero():
            raise BadSplitError(f"member {i} is zero")
        if e * e != e:
            raise BadSplitError(f"member {i} is not idempotent")
        for j in range(i + 1, len(s.elements)):
            if not (e * s.elements[j]).is_zero():
                raise BadSplitError(f"members {i} and {j} are not orthogonal")
        total = total + e
    if not total.is_identity():
        raise BadSplitError("set does not sum to the identity")


def combine(s: IdempotentSet, coeffs) -> FieldMatrix:
    """The matrix sum(coeffs[i] * E_i)."""
    coeffs = _check_coeffs(s, coeffs)
    acc = FieldMatrix.zeros(s.group.order, s.group.order, s.p)
    for c, completion in zip(coeffs, s.completions):
        if c:
            acc = acc + completion.scale(int(c))
    return acc


def combine_element(s: IdempotentSet, coeffs) -> GroupRingElement:
    """Same combination kept inside the group ring."""
    coeffs = _check_coeffs(s, coeffs)
    acc = GroupRingElement.zero(s.group, s.p)
    for c, e in zip(coeffs, s.elements):
        if c:
            acc = acc + e.scale(int(c))
    return acc


def _check_coeffs(s: IdempotentSet, coeffs) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=np.int64) % s.p
    if arr.shape != (len(s),):
        raise BadSplitError(f"need {len(s)} coefficients, got shape {arr.shape}")
    return arr


def combination_rank(s: IdempotentSet, coeffs) -> int:
    """Rank of combine(s, coeffs) by the support formula (no elimination)."""
    coeffs = _check_coeffs(s, coeffs)
    return int(sum(r for c, r in zip(coeffs, s.ranks) if c))


def combination_inverse(s: IdempotentSet, coeffs) -> FieldMatrix:
    """Inverse of a full-support combination: sum(a_i^(-1) E_i)."""
    coeffs = _check_coeffs(s, coeffs)
    if (coeffs == 0).any():
        raise NotInvertibleError("combination has a zero coefficient")
    inv = [mod_inverse(int(c), s.p) for c in coeffs]
    return combine(s, inv)


def combination_det(s: IdempotentSet, coeffs) -> Fp:
    """Determinant of a combination: product of a_i^rank(E_i)."""
    coeffs = _check_coeffs(s, coeffs)
    if (coeffs == 0).any():
        return Fp(0, s.p)
    acc = 1
    for c, r in zip(coeffs, s.ranks):
        acc = acc * pow(int(c), r, s.p) % s.p
    return Fp(acc, s.p)


@dataclass(frozen=True)
class KeySplit:
    """Disjoint-support pair X, Y with recorded coefficients."""

    x: FieldMatrix
    y: FieldMatrix
    x_coeffs: np.ndarray
    y_coeffs: np.ndarray
    support: tuple[int, ...]


def split_keypair(s: IdempotentSet, support, seed) -> KeySplit:
    """Random nonzero coefficients over a proper support and its complement.

    X uses the indices in `support`, Y the rest; X Y = 0 and X + Y is a
    full-support combination, hence invertible.
    """
    support = tuple(sorted(set(int(i) for i in support)))
    if not support or len(support) >= len(s):
        raise BadSplitError(
            f"support must be a proper non-empty subset of 0..{len(s) - 1}"
        )
    if support[0] < 0 or support[-1] >= len(s):
        raise BadSplitError(f"support {support} out of range")
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    x_coeffs = np.zeros(len(s), dtype=np.int64)
    y_coeffs = np.zeros(len(s), dtype=np.int64)
    for i in range(len(s)):
        value = int(rng.integers(1, s.p))
        if i in support:
            x_coeffs[i] = value
        else:
            y_coeffs[i] = value
    return KeySplit(
        combine(s, x_coeffs), combine(s, y_coeffs), x_coeffs, y_coeffs, support
    )
