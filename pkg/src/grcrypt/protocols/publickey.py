"""Public-key encryption from orthogonal idempotent splits.

The key owner builds X and Y on disjoint halves of a complete
orthogonal idempotent set, so each is singular (its kernel is the other
half's image) while X + Y has full support and is invertible with a
cheap inverse.  The published key is the masked pair (X A1, Y A2); a
sender convolves data z against both components and the owner strips
the masks, sums, and applies the split inverse.

Also here: the handshake that turns a public key into a key private to
one correspondent, the partial-key variant that privatizes a published
singular product y B, and the multi-component generalization that
reserves one component as a sender-authentication check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..constructions import (
    random_invertible_element,
    random_invertible_matrix,
    sample_singular_element,
)
from ..errors import (
    AuthFailure,
    BadSplitError,
    DimensionMismatchError,
    GroupMismatchError,
    TamperDetectedError,
)
from ..ffield import FieldMatrix, FieldVector, mod_inverse
from ..groupring import GroupRingElement, GroupSpec
from ..idempotents import (
    IdempotentSet,
    combine_element,
    cyclic_idempotent_set,
)
from .base import Channel, Transcript, require_large_kernel, spawn_rngs


@dataclass(frozen=True)
class PublicKey:
    """Masked component pair, first rows only (both factors circulant)."""

    group: GroupSpec
    p: int
    components: tuple[FieldVector, FieldVector]

    @property
    def n(self) -> int:
        return self.group.order


@dataclass
class PrivateKey:
    idempotents: IdempotentSet
    x_weights: np.ndarray
    y_weights: np.ndarray
    masks: tuple[GroupRingElement, GroupRingElement]
    public: PublicKey

    def split_inverse(self) -> GroupRingElement:
        """(X + Y)^(-1) as an element: invert each idempotent weight."""
        s = self.idempotents
        combined = (self.x_weights + self.y_weights) % s.p
        inv = [mod_inverse(int(c), s.p) for c in combined]
        return combine_element(s, inv)


@dataclass(frozen=True)
class Ciphertext:
    components: tuple[FieldVector, FieldVector]


def _random_support(n: int, rng) -> tuple[int, ...]:
    size = max(1, n // 2)
    return tuple(int(i) for i in rng.choice(n, size=size, replace=False))


def generate_keypair(
    n: int,
    p: int,
    *,
    seed,
    support=None,
    x_weights=None,
    y_weights=None,
    mask_a1: GroupRingElement | None = None,
    mask_a2: GroupRingElement | None = None,
) -> tuple[PublicKey, PrivateKey]:
    """Build pk (X A1, Y A2) and sk (X, Y, A1, A2) over a cyclic listing.

    Requires n | p-1 so the rank-one idempotent set exists.  Weights
    may be pinned for reproducing hand-worked values; otherwise a
    random half-sized support gets random nonzero weights on each side.
    """
    s = cyclic_idempotent_set(n, p)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    if x_weights is None or y_weights is None:
        if support is None:
            support = _random_support(n, rng)
        from ..idempotents import split_keypair

        split = split_keypair(s, support, rng)
        x_weights, y_weights = split.x_coeffs, split.y_coeffs
    x_weights = np.asarray(x_weights, dtype=np.int64) % p
    y_weights = np.asarray(y_weights, dtype=np.int64) % p
    if ((x_weights != 0) & (y_weights != 0)).any():
        raise BadSplitError("x and y weights overlap on some idempotent")
    if ((x_weights + y_weights) % p == 0).any():
        raise BadSplitError("weights leave an idempotent uncovered")

    x = combine_element(s, x_weights)
    y = combine_element(s, y_weights)
    if mask_a1 is None:
        mask_a1 = random_invertible_element(s.group, p, rng)
    if mask_a2 is None:
        mask_a2 = random_invertible_element(s.group, p, rng)

    pk = PublicKey(s.group, p, ((x * mask_a1).coeffs, (y * mask_a2).coeffs))
    sk = PrivateKey(s, x_weights, y_weights, (mask_a1, mask_a2), pk)
    return pk, sk


def _as_vector(z, p: int, n: int) -> FieldVector:
    vec = z if isinstance(z, FieldVector) else FieldVector(z, p)
    if len(vec) != n:
        raise DimensionMismatchError(f"data length {len(vec)} != {n}")
    return vec


def encrypt(z, pk: PublicKey) -> Ciphertext:
    """ct = (z * XA1, z * YA2); row-by-circulant products as convolutions."""
    vec = _as_vector(z, pk.p, pk.n)
    zel = GroupRingElement(pk.group, vec)
    return Ciphertext(
        tuple((zel * GroupRingElement(pk.group, c)).coeffs for c in pk.components)
    )


def decrypt(ct: Ciphertext, sk: PrivateKey) -> FieldVector:
    """Strip masks, sum, apply the split inverse; re-encrypt to verify.

    The re-encryption check rejects any tampering of the ciphertext
    pair short of scaling both components by one common codeword-level
    factor, which requires knowing the key.
    """
    group = sk.public.group
    a1, a2 = sk.masks
    zx = GroupRingElement(group, ct.components[0]) * a1.inverse()
    zy = GroupRingElement(group, ct.components[1]) * a2.inverse()
    z = ((zx + zy) * sk.split_inverse()).coeffs
    if encrypt(z, sk.public).components != ct.components:
        raise TamperDetectedError("ciphertext fails re-encryption check")
    return z


@dataclass
class PrivatizeResult:
    """Outcome of turning a public key into a B-only key."""

    transcript: Transcript
    key_for_b: PublicKey
    sk_view: PrivateKey


def privatize(
    pk: PublicKey,
    sk: PrivateKey,
    *,
    seed: int,
    commuting: bool = False,
    channel: Channel | None = None,
) -> PrivatizeResult:
    """Two-round handshake replacing the pk masks with B-specific ones.

    General route: B's masks are arbitrary invertible matrices and the
    two rounds carry full matrices.  Commuting route: everything stays
    same-type circulant and only first rows travel.  Either way B ends
    with (X A_B1, Y A_B2) and A keeps the new masks for decryption and
    for the sender check.
    """
    if sk.public is not pk and sk.public.components != pk.components:
        raise GroupMismatchError("private key does not match this public key")
    group, p, n = pk.group, pk.p, pk.n
    rng_b, rng_a = spawn_rngs(seed, 2)
    transcript = Transcript(
        "pk-privatize", seed, {"group": group.describe(), "p": p, "commuting": commuting}
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    a1, a2 = sk.masks
    new_masks = (
        random_invertible_element(group, p, rng_a),
        random_invertible_element(group, p, rng_a),
    )

    if commuting:
        b_masks = (
            random_invertible_element(group, p, rng_b),
            random_invertible_element(group, p, rng_b),
        )
        m1 = [
            ch.send(f"PPC1.{i}", "B", (GroupRingElement(group, c) * b).coeffs, compressed=True)
            for i, (c, b) in enumerate(zip(pk.components, b_masks))
        ]
        m2 = []
        for i, (payload, old, new) in enumerate(zip(m1, (a1, a2), new_masks)):
            stripped = GroupRingElement(group, payload) * old.inverse()
            m2.append(
                ch.send(f"PPC2.{i}", "A", (stripped * new).coeffs, compressed=True)
            )
        key_components = tuple(
            (GroupRingElement(group, payload) * b.inverse()).coeffs
            for payload, b in zip(m2, b_masks)
        )
    else:
        b_mats = (random_invertible_matrix(n, p, rng_b), random_invertible_matrix(n, p, rng_b))
        b_invs = tuple(b.inverse() for b in b_mats)
        m1 = [
            ch.send(f"PP1.{i}", "B", b @ GroupRingElement(group, c).completion())
            for i, (c, b) in enumerate(zip(pk.components, b_mats))
        ]
        m2 = []
        for i, (payload, old, new) in enumerate(zip(m1, (a1, a2), new_masks)):
            stripped = payload @ old.inverse().completion()
            m2.append(ch.send(f"PP2.{i}", "A", stripped @ new.completion()))
        key_components = tuple(
            (binv @ payload).first_row() for payload, binv in zip(m2, b_invs)
        )

    key_for_b = PublicKey(group, p, key_components)
    sk_view = PrivateKey(sk.idempotents, sk.x_weights, sk.y_weights, new_masks, key_for_b)
    return PrivatizeResult(transcript, key_for_b, sk_view)


@dataclass
class PartialKey:
    """B's published singular product y B plus the private ingredients."""

    published: FieldVector
    y: GroupRingElement
    mask: GroupRingElement


def publish_partial_key(
    group: GroupSpec,
    p: int,
    *,
    seed,
    y: GroupRingElement | None = None,
    mask: GroupRingElement | None = None,
    kernel_threshold: int | None = None,
) -> PartialKey:
    """Singular y under an invertible mask; safe to reveal, useless to invert."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if y is None:
        y = sample_singular_element(group, p, rng)
    require_large_kernel(y, kernel_threshold)
    if mask is None:
        mask = random_invertible_element(group, p, rng)
    return PartialKey((y * mask).coeffs, y, mask)


@dataclass
class PartialPrivatizeResult:
    transcript: Transcript
    key_at_a: FieldVector
    key_at_b: FieldVector

    @property
    def agreed(self) -> bool:
        return self.key_at_a == self.key_at_b


def privatize_partial(
    partial: PartialKey,
    group: GroupSpec,
    p: int,
    *,
    seed: int,
    mask_a: GroupRingElement | None = None,
    mask_b: GroupRingElement | None = None,
    channel: Channel | None = None,
) -> PartialPrivatizeResult:
    """Re-key a published y B to a fresh y B_A shared only with A.

    A wraps the published completion on the left, B swaps his old right
    mask for a new one, A unwraps.  Nobody ever sees y bare.
    """
    rng_a, rng_b = spawn_rngs(seed, 2)
    if mask_a is None:
        mask_a = random_invertible_element(group, p, rng_a)
    if mask_b is None:
        mask_b = random_invertible_element(group, p, rng_b)

    transcript = Transcript(
        "partial-privatize", seed, {"group": group.describe(), "p": p}
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    published = GroupRingElement(group, partial.published)
    m1 = ch.send("PPK1", "A", (mask_a * published).coeffs, compressed=True)
    # B strips his old mask from the right and installs the new one
    reissued = GroupRingElement(group, m1) * partial.mask.inverse() * mask_b
    m2 = ch.send("PPK2", "B", reissued.coeffs, compressed=True)
    key_at_a = (mask_a.inverse() * GroupRingElement(group, m2)).coeffs
    key_at_b = (partial.y * mask_b).coeffs
    transcript.verdict = "agreed" if key_at_a == key_at_b else "mismatch"
    return PartialPrivatizeResult(transcript, key_at_a, key_at_b)


@dataclass(frozen=True)
class MultiPublicKey:
    group: GroupSpec
    p: int
    components: tuple[FieldVector, ...]
    reserved: int = 0

    @property
    def n(self) -> int:
        return self.group.order


@dataclass
class MultiPrivateKey:
    idempotents: IdempotentSet
    weights: tuple[np.ndarray, ...]
    masks: tuple[GroupRingElement, ...]
    public: MultiPublicKey

    def combined_inverse(self) -> GroupRingElement:
        s = self.idempotents
        total = np.zeros(len(s), dtype=np.int64)
        for w in self.weights:
            total = (total + w) % s.p
        inv = [mod_inverse(int(c), s.p) for c in total]
        return combine_element(s, inv)


def generate_multi_keypair(
    n: int,
    p: int,
    r: int,
    *,
    seed,
) -> tuple[MultiPublicKey, MultiPrivateKey]:
    """r-component key over one idempotent set partitioned r ways.

    Component 0 is the reserved check slot; privatize_check() re-masks
    it for a single correspondent before use.
    """
    if not 2 <= r <= n:
        raise BadSplitError(f"need 2 <= r <= n components, got r={r}, n={n}")
    s = cyclic_idempotent_set(n, p)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    order = rng.permutation(n)
    supports = [sorted(int(j) for j in order[i::r]) for i in range(r)]
    weights = []
    for sup in supports:
        w = np.zeros(n, dtype=np.int64)
        for j in sup:
            w[j] = int(rng.integers(1, p))
        weights.append(w)
    masks = tuple(random_invertible_element(s.group, p, rng) for _ in range(r))
    components = tuple(
        (combine_element(s, w) * a).coeffs for w, a in zip(weights, masks)
    )
    mpk = MultiPublicKey(s.group, p, components, reserved=0)
    msk = MultiPrivateKey(s, tuple(weights), masks, mpk)
    return mpk, msk


def privatize_check(
    mpk: MultiPublicKey, msk: MultiPrivateKey, *, seed: int
) -> tuple[MultiPublicKey, MultiPrivateKey]:
    """Swap the reserved component's mask for a correspondent-only one."""
    group, p = mpk.group, mpk.p
    rng_b, rng_a = spawn_rngs(seed, 2)
    i = mpk.reserved
    old = msk.masks[i]
    new = random_invertible_element(group, p, rng_a)
    b_mask = random_invertible_element(group, p, rng_b)

    # same shape as the two-round privatize handshake, one component wide
    m1 = GroupRingElement(group, mpk.components[i]) * b_mask
    m2 = m1 * old.inverse() * new
    reissued = (m2 * b_mask.inverse()).coeffs

    components = list(mpk.components)
    components[i] = reissued
    masks = list(msk.masks)
    masks[i] = new
    new_pk = MultiPublicKey(group, p, tuple(components), reserved=i)
    new_sk = MultiPrivateKey(msk.idempotents, msk.weights, tuple(masks), new_pk)
    return new_pk, new_sk


def encrypt_multi(z, mpk: MultiPublicKey) -> tuple[FieldVector, ...]:
    vec = _as_vector(z, mpk.p, mpk.n)
    zel = GroupRingElement(mpk.group, vec)
    return tuple((zel * GroupRingElement(mpk.group, c)).coeffs for c in mpk.components)


def decrypt_multi(ct: tuple[FieldVector, ...], msk: MultiPrivateKey) -> FieldVector:
    """Recover z from all components; the reserved one doubles as a check.

    A mismatch on the reserved component means the sender did not hold
    the privatized key (AuthFailure); a mismatch elsewhere is plain
    corruption (TamperDetected).
    """
    group = msk.public.group
    if len(ct) != len(msk.masks):
        raise DimensionMismatchError(f"{len(ct)} components for {len(msk.masks)} masks")
    acc = GroupRingElement.zero(group, msk.public.p)
    for c, mask in zip(ct, msk.masks):
        acc = acc + GroupRingElement(group, c) * mask.inverse()
    z = (acc * msk.combined_inverse()).coeffs
    again = encrypt_multi(z, msk.public)
    i = msk.public.reserved
    if again[i] != ct[i]:
        raise AuthFailure("reserved component check failed")
    for j, (a, b) in enumerate(zip(again, ct)):
        if j != i and a != b:
            raise TamperDetectedError(f"component {j} fails re-encryption check")
    return z
