"""Cyclic codes over Z_p and the error-tolerant three-pass pipeline.

A cyclic (n, r) code is the ideal of Z_p[x]/(x^n - 1) generated by a
monic divisor g of x^n - 1 with deg g = n - r.  The generator matrix
stacks the r shifts x^i g(x); decoding is classic syndrome table lookup
with coset leaders enumerated in a fixed order (weight ascending, then
ascending vector lexicographic order), so ties break deterministically.

Two facts make the code usable inside the masking protocols:

* the completion of a codeword in Z_p[Cyclic(n)] has rank at most r,
  so encoded payloads automatically have kernels of dimension >= n - r
  and never need a separate singularity step; and
* the code is an ideal, so multiplying a codeword by an invertible
  circulant (the masks the cyclic protocols use) lands inside the code
  again.  The receiver can therefore correct channel errors on the
  final pass BEFORE unmasking, and the correction is exact whenever the
  error weight stays within the packing radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import (
    DecodeFailure,
    DimensionMismatchError,
    GroupMismatchError,
    NotADivisorError,
)
from .ffield import FieldMatrix, FieldVector, check_modulus, mod_inverse
from .groupring import CyclicGroup, GroupRingElement

SYNDROME_TABLE_LIMIT = 1 << 16
EXHAUSTIVE_DISTANCE_LIMIT = 16


def _poly_divmod(num: np.ndarray, den: np.ndarray, p: int):
    """Quotient and remainder of coefficient arrays (lowest degree first)."""
    num = num.copy() % p
    dd = len(den) - 1
    while dd > 0 and den[dd] == 0:
        dd -= 1
    lead_inv = mod_inverse(int(den[dd]), p)
    quot = np.zeros(max(len(num) - dd, 1), dtype=np.int64)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            factor = c * lead_inv % p
            quot[i - dd] = factor
            num[i - dd: i + 1] = (num[i - dd: i + 1] - factor * den[: dd + 1]) % p
    return quot % p, num[:dd] % p if dd else np.zeros(0, dtype=np.int64)


@dataclass
class CyclicCode:
    """An (n, r) cyclic code with its decoding tables precomputed."""

    n: int
    r: int
    p: int
    generator: FieldVector
    generator_matrix: FieldMatrix
    check_matrix: FieldMatrix
    distance: int
    _syndromes: dict[tuple, np.ndarray]
    _pivot_cols: list[int]
    _unencode: FieldMatrix

    @property
    def t(self) -> int:
        """Guaranteed correction radius floor((d - 1) / 2)."""
        return (self.distance - 1) // 2

    # --- construction ---------------------------------------------------

    @staticmethod
    def from_generator_poly(n: int, p: int, g, distance: int | None = None) -> "CyclicCode":
        """Build the code generated by g(x); g must divide x^n - 1 mod p.

        Args:
            n: block length.
            p: field modulus.
            g: coefficients of g(x), lowest degree first.
            distance: known minimum distance, required when the message
                space is too large to enumerate (r > 16 or p^r > 2^16).
        """
        check_modulus(p)
        g = np.asarray(g, dtype=np.int64) % p
        while len(g) > 1 and g[-1] == 0:
            g = g[:-1]
        deg = len(g) - 1
        if deg < 1 or deg >= n:
            raise NotADivisorError(f"generator degree {deg} unusable for length {n}")
        xn1 = np.zeros(n + 1, dtype=np.int64)
        xn1[0] = (-1) % p
        xn1[n] = 1
        _, rem = _poly_divmod(xn1, g, p)
        if rem.any():
            raise NotADivisorError(f"g does not divide x^{n} - 1 over Z_{p}")
        r = n - deg
        rows = np.zeros((r, n), dtype=np.int64)
        for i in range(r):
            rows[i, i: i + deg + 1] = g
        gen = FieldMatrix(rows, p)
        assert gen.rank() == r
        # dual basis: right kernel of G, stacked as the check matrix rows
        dual = FieldMatrix(rows.T, p).kernel_basis()
        check = FieldMatrix(np.array([b.values for b in dual], dtype=np.int64), p)
        dist = distance if distance is not None else _exhaustive_distance(gen, p)
        syndromes = _build_syndrome_table(check, p)
        red_pivots = _pivot_columns(rows, p)
        sub = FieldMatrix(rows[:, red_pivots], p)
        return CyclicCode(
            n=n,
            r=r,
            p=p,
            generator=FieldVector(g, p),
            generator_matrix=gen,
            check_matrix=check,
            distance=dist,
            _syndromes=syndromes,
            _pivot_cols=red_pivots,
            _unencode=sub.inverse(),
        )

    # --- encode / decode ---------------------------------------------------

    def encode(self, message) -> FieldVector:
        msg = message if isinstance(message, FieldVector) else FieldVector(message, self.p)
        if len(msg) != self.r:
            raise DimensionMismatchError(f"message length {len(msg)} != {self.r}")
        return msg @ self.generator_matrix

    def syndrome(self, word: FieldVector) -> tuple:
        if len(word) != self.n:
            raise DimensionMismatchError(f"word length {len(word)} != {self.n}")
        return tuple((self.check_matrix.values @ word.values % self.p).tolist())

    def correct(self, word: FieldVector) -> FieldVector:
        """Nearest codeword by coset leader; DecodeFailure beyond radius t."""
        leader = self._syndromes[self.syndrome(word)]
        weight = int(np.count_nonzero(leader))
        if weight > self.t:
            raise DecodeFailure(
                f"coset leader weight {weight} exceeds correction radius {self.t}"
            )
        return FieldVector((word.values - leader) % self.p, self.p)

    def unencode(self, codeword: FieldVector) -> FieldVector:
        """Solve message * G = codeword for an exact codeword."""
        picked = FieldVector(codeword.values[self._pivot_cols], self.p)
        msg = picked @ self._unencode
        if self.encode(msg) != codeword:
            raise DecodeFailure("word is not a codeword")
        return msg

    def decode(self, word: FieldVector) -> FieldVector:
        """Correct then unencode: message recovery from a noisy word."""
        return self.unencode(self.correct(word))

    # --- ring view ---------------------------------------------------------

    def element(self, codeword: FieldVector) -> GroupRingElement:
        return GroupRingElement(CyclicGroup(self.n), codeword)


def _pivot_columns(rows: np.ndarray, p: int) -> list[int]:
    from .ffield import _row_reduce

    _, pivots = _row_reduce(rows, p)
    return pivots


def _exhaustive_distance(gen: FieldMatrix, p: int) -> int:
    r, n = gen.rows, gen.cols
    if r > EXHAUSTIVE_DISTANCE_LIMIT or p**r > SYNDROME_TABLE_LIMIT:
        raise NotADivisorError(
            f"distance enumeration infeasible for p^{r}; pass distance explicitly"
        )
    best = n
    msg = np.zeros(r, dtype=np.int64)
    gv = gen.values
    for idx in range(1, p**r):
        v = idx
        for j in range(r):
            msg[j] = v % p
            v //= p
        word = msg @ gv % p
        w = int(np.count_nonzero(word))
        if w < best:
            best = w
    return best


def _build_syndrome_table(check: FieldMatrix, p: int) -> dict[tuple, np.ndarray]:
    """Coset leader per syndrome, deterministic enumeration order.

    Patterns are visited weight by weight; inside one weight the order
    is ascending vector lexicographic (nonzero entries as late and as
    small as possible first), so the recorded leader for each coset is
    the lexicographically smallest one of minimal weight.
    """
    n = check.cols
    total = p ** check.rows
    if total > SYNDROME_TABLE_LIMIT:
        raise NotADivisorError(
            f"syndrome table of size {total} exceeds limit {SYNDROME_TABLE_LIMIT}"
        )
    table: dict[tuple, np.ndarray] = {}
    hv = check.values
    for weight in range(n + 1):
        if len(table) == total:
            break
        for positions in combinations(range(n), weight):
            for values in product(range(1, p), repeat=weight):
                err = np.zeros(n, dtype=np.int64)
                for pos, val in zip(positions, values):
                    err[pos] = val
                key = tuple((hv @ err % p).tolist())
                seen = table.get(key)
                if seen is None:
                    table[key] = err
                elif int(np.count_nonzero(seen)) == weight and tuple(err) < tuple(seen):
                    # same minimal weight: keep the lexicographically
                    # smaller leader
                    table[key] = err
    return table


@dataclass(frozen=True)
class RankBoundReport:
    """Completion rank of an encoded payload against the dimension bound."""

    rank: int
    bound: int
    kernel_dim: int
    holds: bool


def completion_rank_bound(code: CyclicCode, message) -> RankBoundReport:
    """Rank of the completion of encode(message); always at most r.

    The generator shifts span the code, each shift completes to a
    matrix of the same row space, so the completion of any codeword has
    row space inside an r-dimensional space.
    """
    word = code.encode(message)
    completion = code.element(word).completion()
    rank = completion.rank()
    return RankBoundReport(
        rank=rank,
        bound=code.r,
        kernel_dim=code.n - rank,
        holds=rank <= code.r,
    )
