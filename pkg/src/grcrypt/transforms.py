"""Fast convolution paths for abelian group rings.

Z_p[G] for abelian G has no usable Fourier basis over Z_p itself (the
needed roots of unity collapse mod p), so both fast paths here lift the
coefficients to the integers and work modulo an auxiliary prime q:

* the integer group convolution of vectors with entries in [0, p) has
  entries bounded by n (p-1)^2, so any prime q above that bound gives a
  wraparound-free image of the true convolution, and
* q is chosen with q = 1 (mod p) for the C_p^k tensor transform (a
  primitive p-th root of unity must exist mod q) or q = 1 (mod n) for
  the cyclic NTT (a primitive n-th root must exist).

The plan selects, per group:

* ElemAbelian(p, k): k passes of the p-point Fourier matrix along each
  digit axis (the p = 2 case is the classic Walsh-Hadamard butterfly).
* Cyclic(n): number-theoretic transform, recursive Cooley-Tukey on the
  smallest prime factor, direct table transform at the base.
* Dihedral and anything else: the naive reference convolution.

The deterministic modulus rule is: smallest prime q exceeding the
wraparound bound with the required congruence; NoSuitableModulusError
if the search passes 2**31.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadLengthError,
    NoSuitableModulusError,
    PlanMismatchError,
)
from .ffield import FieldVector
from .groupring import (
    CyclicGroup,
    ElemAbelianGroup,
    GroupRingElement,
    GroupSpec,
    convolve,
)

MODULUS_SEARCH_LIMIT = 1 << 31

NAIVE = "naive"
TENSOR = "tensor-lift"
NTT = "ntt"


def wht(v) -> np.ndarray:
    """In-place-style integer Walsh-Hadamard transform of a length 2^k vector.

    Stage matrix is [[1, 1], [1, -1]]; applying the transform twice
    multiplies by the length, so wht(wht(v)) == len(v) * v.

    Args:
        v: integer sequence of length 2^k (k >= 0).

    Returns:
        int64 numpy array of transformed values (no modular reduction).
    """
    arr = np.asarray(v, dtype=np.int64).copy()
    n = arr.shape[0]
    if n == 0 or (n & (n - 1)) != 0:
        raise BadLengthError(f"length {n} is not a power of two")
    h = 1
    while h < n:
        blocks = arr.reshape(-1, 2, h)
        top = blocks[:, 0, :] + blocks[:, 1, :]
        bottom = blocks[:, 0, :] - blocks[:, 1, :]
        arr = np.stack([top, bottom], axis=1).reshape(n)
        h *= 2
    return arr


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def find_modulus(residue_mod: int, bound: int) -> int:
    """Smallest prime q > bound with q = 1 (mod residue_mod), below 2**31."""
    q = bound + 1
    r = q % residue_mod
    if r != 1:
        q += (1 - r) % residue_mod
    if residue_mod == 1 and q < 2:
        q = 2
    while q < MODULUS_SEARCH_LIMIT:
        if _is_prime(q):
            return q
        q += residue_mod
    raise NoSuitableModulusError(
        f"no prime q = 1 mod {residue_mod} in ({bound}, 2**31)"
    )


def _primitive_root_of_unity(order: int, q: int) -> int:
    """An element of exact multiplicative order `order` mod prime q."""
    if (q - 1) % order != 0:
        raise NoSuitableModulusError(f"{order} does not divide {q}-1")
    factors = _prime_factors(q - 1)
    g = 2
    while g < q:
        if all(pow(g, (q - 1) // f, q) != 1 for f in factors):
            break
        g += 1
    else:  # pragma: no cover - q prime always has a generator
        raise NoSuitableModulusError(f"no generator mod {q}")
    w = pow(g, (q - 1) // order, q)
    assert pow(w, order, q) == 1
    for f in _prime_factors(order):
        assert pow(w, order // f, q) != 1
    return w


@dataclass(frozen=True)
class TransformPlan:
    """Frozen recipe tying a group ring to one multiplication strategy."""

    group: GroupSpec
    p: int
    strategy: str
    modulus: int | None = None
    root: int | None = None

    def describe(self) -> str:
        extra = ""
        if self.modulus is not None:
            extra = f" q={self.modulus} root={self.root}"
        return f"{self.strategy} over {self.group.describe()} mod {self.p}{extra}"


def plan_for(group: GroupSpec, p: int) -> TransformPlan:
    """Pick the fastest exact strategy available for Z_p[group]."""
    n = group.order
    bound = max(n * (p - 1) * (p - 1), n, 2)
    if isinstance(group, ElemAbelianGroup) and group.p == p:
        q = find_modulus(p, bound)
        return TransformPlan(group, p, TENSOR, q, _primitive_root_of_unity(p, q))
    if isinstance(group, CyclicGroup) and n > 1:
        try:
            q = find_modulus(n, bound)
        except NoSuitableModulusError:
            return TransformPlan(group, p, NAIVE)
        return TransformPlan(group, p, NTT, q, _primitive_root_of_unity(n, q))
    return TransformPlan(group, p, NAIVE)


# --- tensor transform over C_p^k ------------------------------------------


def _fourier_matrix(p: int, root: int, q: int, inverse: bool) -> np.ndarray:
    e = np.arange(p, dtype=np.int64)
    w = pow(root, q - 2, q) if inverse else root
    table = np.array([pow(w, int(i), q) for i in range(p)], dtype=np.int64)
    return table[(np.outer(e, e)) % p]


def _tensor_apply(vec: np.ndarray, f: np.ndarray, p: int, k: int, q: int) -> np.ndarray:
    # largest run of q-bounded products an int64 accumulator can take
    chunk = max(1, int((1 << 62) // (q * q)))
    a = vec.reshape((p,) * k)
    for axis in range(k):
        if chunk >= p:
            a = np.tensordot(f, a, axes=([1], [axis])) % q
        else:
            partial = None
            for lo in range(0, p, chunk):
                hi = min(lo + chunk, p)
                piece = np.tensordot(
                    f[:, lo:hi], np.take(a, range(lo, hi), axis=axis), axes=([1], [axis])
                ) % q
                partial = piece if partial is None else (partial + piece) % q
            a = partial
        a = np.moveaxis(a, 0, axis)
    return a.reshape(-1)


# --- cyclic NTT -------------------------------------------------------------

_DFT_BASE = 64


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1 if d == 2 else 2
    return n


def _dft(a: np.ndarray, table: np.ndarray, q: int) -> np.ndarray:
    """DFT of length n = len(a) where table[j] = root**j, root of order n.

    Recursive Cooley-Tukey splitting off the smallest prime factor;
    lengths at or below the base cutoff go through a direct table
    product with an immediate reduction per radix step, which keeps all
    intermediates below q**2 < 2**62.
    """
    n = a.shape[0]
    if n == 1:
        return a.copy()
    f = _smallest_prime_factor(n)
    if n <= _DFT_BASE or f == n:
        ks = np.arange(n, dtype=np.int64)
        out = np.zeros(n, dtype=np.int64)
        for j in range(n):
            if a[j]:
                out = (out + int(a[j]) * table[(j * ks) % n]) % q
        return out
    m = n // f
    subtable = table[::f]
    subs = [_dft(a[j::f], subtable, q) for j in range(f)]
    ks = np.arange(n, dtype=np.int64)
    km = ks % m
    out = subs[0][km].copy()
    for j in range(1, f):
        out = (out + table[(j * ks) % n] * subs[j][km]) % q
    return out


_TABLE_CACHE: dict[tuple[int, int, int], np.ndarray] = {}


def _power_table(w: int, n: int, q: int) -> np.ndarray:
    key = (w, n, q)
    table = _TABLE_CACHE.get(key)
    if table is None:
        table = np.empty(n, dtype=np.int64)
        acc = 1
        for i in range(n):
            table[i] = acc
            acc = (acc * w) % q
        table.flags.writeable = False
        if len(_TABLE_CACHE) > 64:
            _TABLE_CACHE.clear()
        _TABLE_CACHE[key] = table
    return table


def _ntt(a: np.ndarray, root: int, q: int, inverse: bool) -> np.ndarray:
    n = a.shape[0]
    w = pow(root, q - 2, q) if inverse else root
    out = _dft(a % q, _power_table(w, n, q), q)
    if inverse:
        out = (out * pow(n, q - 2, q)) % q
    return out


# --- public multiplication entry point ---------------------------------------


def fast_multiply(
    x: GroupRingElement, a: GroupRingElement, plan: TransformPlan
) -> GroupRingElement:
    """Group ring product through the plan's strategy; exact by construction."""
    if x.group != plan.group or a.group != plan.group:
        raise PlanMismatchError(
            f"plan built for {plan.group!r}, got {x.group!r} and {a.group!r}"
        )
    if x.p != plan.p or a.p != plan.p:
        raise PlanMismatchError(f"plan built for Z_{plan.p}, got Z_{x.p} and Z_{a.p}")

    if plan.strategy == NAIVE:
        return GroupRingElement(x.group, convolve(x.coeffs, a.coeffs, x.group))

    q = plan.modulus
    xv = x.coeffs.values.astype(np.int64)
    av = a.coeffs.values.astype(np.int64)

    if plan.strategy == TENSOR:
        grp: ElemAbelianGroup = plan.group  # type: ignore[assignment]
        fwd = _fourier_matrix(grp.p, plan.root, q, inverse=False)
        rev = _fourier_matrix(grp.p, plan.root, q, inverse=True)
        fx = _tensor_apply(xv, fwd, grp.p, grp.k, q)
        fa = _tensor_apply(av, fwd, grp.p, grp.k, q)
        prod = (fx * fa) % q
        lifted = _tensor_apply(prod, rev, grp.p, grp.k, q)
        lifted = (lifted * pow(grp.order, q - 2, q)) % q
    elif plan.strategy == NTT:
        fx = _ntt(xv, plan.root, q, inverse=False)
        fa = _ntt(av, plan.root, q, inverse=False)
        lifted = _ntt((fx * fa) % q, plan.root, q, inverse=True)
    else:  # pragma: no cover - strategies are closed
        raise PlanMismatchError(f"unknown strategy {plan.strategy!r}")

    # values below q equal the integer convolution, so reducing mod p
    # finishes the field product
    return GroupRingElement.from_coeffs(x.group, x.p, lifted % x.p)
