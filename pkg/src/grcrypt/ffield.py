"""Exact dense linear algebra over prime fields Z_p.

This module is the ground truth the rest of the toolkit is checked
against: everything here is plain Gaussian elimination on int64 numpy
arrays with an explicit modulus, no floating point anywhere.

Conventions, stated once and used everywhere:

* Vectors are ROW vectors and act on the left: ``v @ M``.  The kernel of
  a matrix is therefore the LEFT kernel ``{v : v M = 0}``.
* Every value carries its modulus ``p``.  Mixing moduli raises
  ModulusMismatchError; there is no silent promotion.
* ``p`` must be an odd or even prime below 2**20 so that any product of
  two reduced entries fits comfortably in an int64 accumulator.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatchError,
    ModulusMismatchError,
    SingularMatrixError,
    ZeroInverseError,
)

MAX_MODULUS = 1 << 20


@lru_cache(maxsize=None)
def check_modulus(p: int) -> int:
    """Validate a field modulus (prime, 2 <= p < 2**20) and return it."""
    if not isinstance(p, int) or p < 2:
        raise ModulusMismatchError(f"modulus must be an integer >= 2, got {p!r}")
    if p >= MAX_MODULUS:
        raise ModulusMismatchError(f"modulus {p} out of supported range (< 2**20)")
    if p == 2:
        return p
    if p % 2 == 0:
        raise ModulusMismatchError(f"modulus {p} is not prime")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ModulusMismatchError(f"modulus {p} is not prime")
        d += 2
    return p


def _same_modulus(a, b) -> int:
    if a.p != b.p:
        raise ModulusMismatchError(f"mixed moduli {a.p} and {b.p}")
    return a.p


def mod_inverse(value: int, p: int) -> int:
    """Inverse of ``value`` mod prime ``p`` via Fermat; ZeroInverseError on 0."""
    check_modulus(p)
    v = value % p
    if v == 0:
        raise ZeroInverseError(f"0 has no inverse mod {p}")
    return pow(v, p - 2, p)


class Fp:
    """A scalar in Z_p.  Immutable, hashable, checked arithmetic."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        check_modulus(p)
        object.__setattr__(self, "value", int(value) % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("Fp is immutable")

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            _same_modulus(self, other)
            return other
        if isinstance(other, (int, np.integer)):
            return Fp(int(other), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        return Fp(mod_inverse(self.value, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, p={self.p})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _as_int64(data, p: int) -> np.ndarray:
    arr = np.asarray(data, dtype=np.int64) % p
    return _freeze(arr.copy() if not arr.flags.owndata else arr)


class FieldVector:
    """Row vector over Z_p backed by a read-only int64 array."""

    __slots__ = ("values", "p")

    def __init__(self, data, p: int):
        check_modulus(p)
        arr = _as_int64(data, p)
        if arr.ndim != 1:
            raise DimensionMismatchError(f"vector needs 1-d data, got shape {arr.shape}")
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("FieldVector is immutable")

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, i) -> int:
        return int(self.values[i])

    def __add__(self, other: "FieldVector") -> "FieldVector":
        p = _same_modulus(self, other)
        if len(self) != len(other):
            raise DimensionMismatchError(f"lengths {len(self)} and {len(other)}")
        return FieldVector((self.values + other.values) % p, p)

    def __sub__(self, other: "FieldVector") -> "FieldVector":
        p = _same_modulus(self, other)
        if len(self) != len(other):
            raise DimensionMismatchError(f"lengths {len(self)} and {len(other)}")
        return FieldVector((self.values - other.values) % p, p)

    def __neg__(self):
        return FieldVector((-self.values) % self.p, self.p)

    def scale(self, c: int | Fp) -> "FieldVector":
        c = int(c) % self.p
        return FieldVector((self.values * c) % self.p, self.p)

    def __matmul__(self, m: "FieldMatrix") -> "FieldVector":
        if not isinstance(m, FieldMatrix):
            return NotImplemented
        p = _same_modulus(self, m)
        if len(self) != m.rows:
            raise DimensionMismatchError(f"vector length {len(self)} vs {m.rows} rows")
        _guard_product(m.rows, p)
        return FieldVector((self.values @ m.values) % p, p)

    def dot(self, other: "FieldVector") -> Fp:
        p = _same_modulus(self, other)
        if len(self) != len(other):
            raise DimensionMismatchError(f"lengths {len(self)} and {len(other)}")
        return Fp(int((self.values * other.values % p).sum() % p), p)

    def is_zero(self) -> bool:
        return not self.values.any()

    def weight(self) -> int:
        """Hamming weight (number of nonzero coordinates)."""
        return int(np.count_nonzero(self.values))

    def __eq__(self, other):
        if not isinstance(other, FieldVector):
            return NotImplemented
        return (
            self.p == other.p
            and len(self) == len(other)
            and bool(np.array_equal(self.values, other.values))
        )

    __hash__ = None

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]

    def __repr__(self):
        return f"FieldVector({self.tolist()}, p={self.p})"


def _guard_product(inner: int, p: int) -> None:
    # sum of `inner` products of entries < p must fit in int64
    if inner * (p - 1) * (p - 1) >= (1 << 62):
        raise DimensionMismatchError(
            f"product with inner dimension {inner} would overflow int64 at p={p}"
        )


class FieldMatrix:
    """Dense matrix over Z_p backed by a read-only int64 array."""

    __slots__ = ("values", "p")

    def __init__(self, data, p: int):
        check_modulus(p)
        arr = _as_int64(data, p)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"matrix needs 2-d data, got shape {arr.shape}")
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("FieldMatrix is immutable")

    # --- constructors -----------------------------------------------------

    @staticmethod
    def identity(n: int, p: int) -> "FieldMatrix":
        return FieldMatrix(np.eye(n, dtype=np.int64), p)

    @staticmethod
    def zeros(rows: int, cols: int, p: int) -> "FieldMatrix":
        return FieldMatrix(np.zeros((rows, cols), dtype=np.int64), p)

    # --- shape ------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    def row(self, i: int) -> FieldVector:
        return FieldVector(self.values[i], self.p)

    def first_row(self) -> FieldVector:
        return self.row(0)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.values.T, self.p)

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        p = _same_modulus(self, other)
        if self.values.shape != other.values.shape:
            raise DimensionMismatchError(
                f"shapes {self.values.shape} and {other.values.shape}"
            )
        return FieldMatrix((self.values + other.values) % p, p)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        p = _same_modulus(self, other)
        if self.values.shape != other.values.shape:
            raise DimensionMismatchError(
                f"shapes {self.values.shape} and {other.values.shape}"
            )
        return FieldMatrix((self.values - other.values) % p, p)

    def scale(self, c: int | Fp) -> "FieldMatrix":
        c = int(c) % self.p
        return FieldMatrix((self.values * c) % self.p, self.p)

    def __matmul__(self, other):
        if isinstance(other, FieldMatrix):
            p = _same_modulus(self, other)
            if self.cols != other.rows:
                raise DimensionMismatchError(
                    f"{self.cols} columns against {other.rows} rows"
                )
            _guard_product(self.cols, p)
            return FieldMatrix((self.values @ other.values) % p, p)
        return NotImplemented

    # --- elimination-based queries -----------------------------------------

    def rank(self) -> int:
        """Rank over Z_p, by row reduction.

        Returns:
            Number of pivots in the reduced row echelon form.
        """
        _, pivots = _row_reduce(self.values, self.p)
        return len(pivots)

    def kernel_basis(self) -> list[FieldVector]:
        """Basis of the left kernel {v : v M = 0}.

        The basis vectors come out of the standard free-column
        construction applied to the transpose, so the result is
        deterministic for a given matrix.

        Returns:
            List of rows x 1 FieldVectors; empty list for full row rank.
        """
        basis = _right_nullspace(self.values.T, self.p)
        return [FieldVector(b, self.p) for b in basis]

    def kernel_dim(self) -> int:
        return self.rows - self.rank()

    def inverse(self) -> "FieldMatrix":
        """Inverse of a square matrix; SingularMatrixError if rank < n."""
        n = self.rows
        if n != self.cols:
            raise DimensionMismatchError(f"inverse of non-square {self.rows}x{self.cols}")
        aug = np.concatenate(
            [self.values, np.eye(n, dtype=np.int64)], axis=1
        )
        red, pivots = _row_reduce(aug, self.p)
        if pivots != list(range(n)):
            # pivots that fell into the identity half do not count toward rank
            rank = sum(1 for c in pivots if c < n)
            raise SingularMatrixError(f"matrix of rank {rank} < {n}")
        return FieldMatrix(red[:, n:], self.p)

    def det(self) -> Fp:
        """Determinant via fraction-free forward elimination."""
        n = self.rows
        if n != self.cols:
            raise DimensionMismatchError(f"det of non-square {self.rows}x{self.cols}")
        p = self.p
        m = self.values.copy()
        det = 1
        for c in range(n):
            nz = np.nonzero(m[c:, c])[0]
            if nz.size == 0:
                return Fp(0, p)
            i = c + int(nz[0])
            if i != c:
                m[[c, i]] = m[[i, c]]
                det = (det * (p - 1)) % p
            pivot = int(m[c, c])
            det = (det * pivot) % p
            inv = pow(pivot, p - 2, p)
            below = m[c + 1:, c]
            sel = np.nonzero(below)[0]
            if sel.size:
                factors = (below[sel] * inv) % p
                m[c + 1 + sel] = (m[c + 1 + sel] - np.outer(factors, m[c])) % p
        return Fp(det, p)

    def trace(self) -> Fp:
        return Fp(int(np.trace(self.values) % self.p), self.p)

    # --- misc -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.values.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(
            np.array_equal(self.values, np.eye(self.rows, dtype=np.int64))
        )

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.p == other.p
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.values, other.values))
        )

    __hash__ = None

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.values]

    def __repr__(self):
        return f"FieldMatrix({self.rows}x{self.cols}, p={self.p})"


def _row_reduce(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p.

    Args:
        a: 2-d int64 array, already reduced mod p (read-only is fine).
        p: prime modulus.

    Returns:
        (rref, pivot_columns).  The input is not modified.
    """
    m = (a % p).astype(np.int64)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        sel = np.nonzero(col)[0]
        if sel.size:
            m[sel] = (m[sel] - np.outer(col[sel], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def _right_nullspace(a: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of {x : a x = 0} (column vectors, returned as 1-d arrays)."""
    red, pivots = _row_reduce(a, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r, f]) % p
        basis.append(v)
    return basis


def solve_left(m: FieldMatrix, b: FieldVector) -> FieldVector:
    """One solution v of v M = b, or SingularMatrixError if inconsistent.

    Works for rectangular M; when solutions exist the full solution set
    is this vector plus the left kernel of M.
    """
    p = _same_modulus(m, b)
    if len(b) != m.cols:
        raise DimensionMismatchError(f"rhs length {len(b)} vs {m.cols} columns")
    # v M = b  <=>  M^T v^T = b^T
    aug = np.concatenate([m.values.T, b.values.reshape(-1, 1)], axis=1)
    red, pivots = _row_reduce(aug, p)
    if m.rows in pivots:
        raise SingularMatrixError("system v M = b is inconsistent")
    v = np.zeros(m.rows, dtype=np.int64)
    for r, c in enumerate(pivots):
        v[c] = red[r, m.rows]
    return FieldVector(v, p)
