"""Group rings RG over Z_p with fixed element listings.

A group of order n is presented as indices 0..n-1 under a canonical
listing; a ring element is its coefficient vector in that listing.  The
completion of an element w is the n x n matrix M with

    M[i][j] = coefficient of w at index of  g_i^{-1} g_j

so row 0 is the coefficient vector itself and the map w -> M is a ring
homomorphism: the completion of a convolution is the matrix product of
the completions.  Same-typed matrices are therefore determined by their
first row, which is what lets protocols ship vectors instead of full
matrices.

Canonical listings:

* Cyclic(n): 1, g, g^2, ..., g^(n-1).
* ElemAbelian(p, k): index i is its little-endian base-p digit vector;
  the product adds digit vectors mod p.
* Dihedral(m), order 2m: 1, a, ..., a^(m-1), b, ba, ba^2, ..., ba^(m-1)
  with b^2 = 1 and a b = b a^(-1).  Under this listing a completion has
  the block shape [[A, B], [B, A]] with A circulant and B reverse
  circulant.
"""

from __future__ import annotations

import numpy as np

from .errors import GroupMismatchError, NotInvertibleError, SingularMatrixError
from .ffield import FieldMatrix, FieldVector, Fp, check_modulus, mod_inverse


class GroupSpec:
    """Abstract finite group under a fixed listing of its elements."""

    order: int
    abelian: bool

    def mul(self, i: int, j: int) -> int:
        raise NotImplementedError

    def inv(self, i: int) -> int:
        raise NotImplementedError

    def mul_vec(self, i: int, js: np.ndarray) -> np.ndarray:
        """Vectorized mul(i, j) for an array of indices j."""
        raise NotImplementedError

    def describe(self) -> str:
        """One-line descriptor used by the GRC1 text format."""
        raise NotImplementedError

    def __repr__(self):
        return self.describe()

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())


class CyclicGroup(GroupSpec):
    """Cyclic group of order n, listing 1, g, ..., g^(n-1)."""

    abelian = True

    def __init__(self, n: int):
        if n < 1:
            raise GroupMismatchError(f"cyclic group order must be >= 1, got {n}")
        self.order = n

    def mul(self, i, j):
        return (i + j) % self.order

    def inv(self, i):
        return (-i) % self.order

    def mul_vec(self, i, js):
        return (i + js) % self.order

    def describe(self):
        return f"cyclic {self.order}"


class ElemAbelianGroup(GroupSpec):
    """Elementary abelian group C_p^k, indices as base-p digit vectors."""

    abelian = True

    def __init__(self, p: int, k: int):
        check_modulus(p)
        if k < 1:
            raise GroupMismatchError(f"exponent k must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.order = p**k
        # digit table: digits[i] is the little-endian base-p expansion of i
        idx = np.arange(self.order)
        digits = np.empty((self.order, k), dtype=np.int64)
        for d in range(k):
            digits[:, d] = idx % p
            idx = idx // p
        self._digits = digits
        self._weights = p ** np.arange(k, dtype=np.int64)

    def _from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (digits % self.p) @ self._weights

    def mul(self, i, j):
        return int(self._from_digits(self._digits[i] + self._digits[j]))

    def inv(self, i):
        return int(self._from_digits(-self._digits[i]))

    def mul_vec(self, i, js):
        return self._from_digits(self._digits[i] + self._digits[js])

    def describe(self):
        return f"elemabelian {self.p} {self.k}"


class DihedralGroup(GroupSpec):
    """Dihedral group of order 2m, listing 1..a^(m-1), b, ba, ..., ba^(m-1)."""

    abelian = False

    def __init__(self, m: int):
        if m < 1:
            raise GroupMismatchError(f"dihedral parameter must be >= 1, got {m}")
        self.m = m
        self.order = 2 * m

    def mul(self, i, j):
        m = self.m
        ri, pi = i % m, i // m
        rj, pj = j % m, j // m
        if pi == 0 and pj == 0:
            return (ri + rj) % m
        if pi == 0 and pj == 1:
            # a^i (b a^j) = b a^(j - i)
            return m + (rj - ri) % m
        if pi == 1 and pj == 0:
            # (b a^i) a^j = b a^(i + j)
            return m + (ri + rj) % m
        # (b a^i)(b a^j) = a^(j - i)
        return (rj - ri) % m

    def inv(self, i):
        m = self.m
        if i < m:
            return (-i) % m
        return i  # reflections are involutions

    def mul_vec(self, i, js):
        m = self.m
        js = np.asarray(js)
        ri, pi = i % m, i // m
        rj = js % m
        pj = js // m
        out = np.empty_like(js)
        if pi == 0:
            rot = pj == 0
            out[rot] = (ri + rj[rot]) % m
            out[~rot] = m + (rj[~rot] - ri) % m
        else:
            rot = pj == 0
            out[rot] = m + (ri + rj[rot]) % m
            out[~rot] = (rj[~rot] - ri) % m
        return out

    def describe(self):
        return f"dihedral {self.m}"


def group_from_descriptor(text: str) -> GroupSpec:
    """Inverse of GroupSpec.describe(); raises GroupMismatchError on junk."""
    parts = text.split()
    try:
        if parts[0] == "cyclic" and len(parts) == 2:
            return CyclicGroup(int(parts[1]))
        if parts[0] == "elemabelian" and len(parts) == 3:
            return ElemAbelianGroup(int(parts[1]), int(parts[2]))
        if parts[0] == "dihedral" and len(parts) == 2:
            return DihedralGroup(int(parts[1]))
    except (ValueError, IndexError):
        pass
    raise GroupMismatchError(f"unknown group descriptor {text!r}")


class GroupRingElement:
    """Element of Z_p[G]: a coefficient vector over a listed group."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupSpec, coeffs: FieldVector):
        if len(coeffs) != group.order:
            raise GroupMismatchError(
                f"{len(coeffs)} coefficients for group of order {group.order}"
            )
        self.group = group
        self.coeffs = coeffs

    @property
    def p(self) -> int:
        return self.coeffs.p

    @staticmethod
    def from_coeffs(group: GroupSpec, p: int, data) -> "GroupRingElement":
        return GroupRingElement(group, FieldVector(data, p))

    @staticmethod
    def identity(group: GroupSpec, p: int) -> "GroupRingElement":
        c = np.zeros(group.order, dtype=np.int64)
        c[0] = 1
        return GroupRingElement.from_coeffs(group, p, c)

    @staticmethod
    def zero(group: GroupSpec, p: int) -> "GroupRingElement":
        return GroupRingElement.from_coeffs(group, p, np.zeros(group.order, dtype=np.int64))

    def _check_peer(self, other: "GroupRingElement") -> None:
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements over {self.group!r} and {other.group!r}"
            )
        if self.p != other.p:
            raise GroupMismatchError(f"elements over Z_{self.p} and Z_{other.p}")

    # --- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_peer(other)
        return GroupRingElement(self.group, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_peer(other)
        return GroupRingElement(self.group, self.coeffs - other.coeffs)

    def __neg__(self):
        return GroupRingElement(self.group, -self.coeffs)

    def scale(self, c: int | Fp) -> "GroupRingElement":
        return GroupRingElement(self.group, self.coeffs.scale(c))

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_peer(other)
        return GroupRingElement(self.group, convolve(self.coeffs, other.coeffs, self.group))

    def __pow__(self, e: int) -> "GroupRingElement":
        if e < 0:
            raise NotInvertibleError("negative powers: use inverse() explicitly")
        result = GroupRingElement.identity(self.group, self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # --- structure ---------------------------------------------------------

    def augmentation(self) -> Fp:
        """Sum of all coefficients (image under the trivial character)."""
        return Fp(int(self.coeffs.values.sum() % self.p), self.p)

    def completion(self) -> FieldMatrix:
        """The n x n matrix M[i][j] = coeff at g_i^{-1} g_j."""
        g = self.group
        n = g.order
        js = np.arange(n)
        rows = np.empty((n, n), dtype=np.int64)
        vals = self.coeffs.values
        for i in range(n):
            rows[i] = vals[g.mul_vec(g.inv(i), js)]
        return FieldMatrix(rows, self.p)

    def inverse(self) -> "GroupRingElement":
        """Ring inverse, if it exists.

        Fast path: over ElemAbelian(p, k) an element w satisfies
        w^p = augmentation(w) * 1, so a unit has inverse
        augmentation(w)^(-1) * w^(p-1).  Everything else inverts the
        completion and reads the first row.
        """
        if isinstance(self.group, ElemAbelianGroup) and self.group.p == self.p:
            s = self.augmentation()
            if s.value == 0:
                raise NotInvertibleError("augmentation 0 over C_p^k is nilpotent")
            inv = (self ** (self.p - 1)).scale(s.inverse())
            return inv
        try:
            m = self.completion().inverse()
        except SingularMatrixError as e:
            raise NotInvertibleError(str(e)) from e
        return GroupRingElement(self.group, m.first_row())

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def is_identity(self) -> bool:
        return self == GroupRingElement.identity(self.group, self.p)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            self.group == other.group
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def __repr__(self):
        return f"GroupRingElement({self.group!r}, {self.coeffs.tolist()}, p={self.p})"


def convolve(x: FieldVector, a: FieldVector, group: GroupSpec) -> FieldVector:
    """Reference G-convolution: out[mul(i, j)] += x[i] * a[j].

    This is the ground-truth product every fast path is tested against,
    so it stays deliberately naive: a gather per nonzero coefficient of
    x, quadratic in the group order.
    """
    if x.p != a.p:
        raise GroupMismatchError(f"operands over Z_{x.p} and Z_{a.p}")
    n = group.order
    if len(x) != n or len(a) != n:
        raise GroupMismatchError("coefficient length does not match group order")
    p = x.p
    js = np.arange(n)
    out = np.zeros(n, dtype=np.int64)
    av = a.values
    for i in np.nonzero(x.values)[0]:
        # out[k] += x[i] * a[j] at k = mul(i, j); scatter via gather on k
        out[group.mul_vec(int(i), js)] += int(x.values[i]) * av
        out %= p
    return FieldVector(out, p)


def same_type(x: GroupRingElement, y: GroupRingElement) -> bool:
    """True when x and y live in the same listed group ring over the same p."""
    return x.group == y.group and x.p == y.p


def element_from_first_row(group: GroupSpec, p: int, row: FieldVector) -> GroupRingElement:
    """Rebuild the unique same-type element whose completion has this first row."""
    if row.p != p:
        raise GroupMismatchError(f"row over Z_{row.p}, expected Z_{p}")
    return GroupRingElement(group, row)
