"""Key agreement built from two interleaved three-pass deliveries.

Alice owns a singular x, Bob a singular y.  Six messages move x to Bob
and y to Alice, each under transport masks:

    KE1  x A           KE4  B1 y
    KE2  B x A          KE5  B1 y A'
    KE3  B x            KE6  y A'

Afterwards both parties hold {x, y} and combine them with a known
constant (default x + y + 1) into an invertible element whose
completion is the shared key matrix.  Singularity of x and y is what
keeps an eavesdropper from peeling the masks off the wire values, and
invertibility of the combination is what makes the key usable; the two
pull in opposite directions, hence the explicit combiner step and its
retry loop.

The commuting variant masks on the right only.  The multivector
variant runs a separate exchange per block over possibly different
group rings.  The coded variant sends codeword payloads and corrects
channel noise on each direction's final pass before unmasking.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..coding import CyclicCode
from ..constructions import random_invertible_element, sample_singular_element
from ..errors import (
    BlockErrorGroup,
    CombinerSingularError,
    CommutativityError,
    GroupMismatchError,
    NotInvertibleError,
)
from ..ffield import FieldMatrix, FieldVector
from ..groupring import CyclicGroup, GroupRingElement, GroupSpec
from .base import Channel, Transcript, require_large_kernel, spawn_rngs


@dataclass
class SharedKey:
    """Invertible combination of the exchanged pair, as element and matrix."""

    element: GroupRingElement
    inverse_element: GroupRingElement
    matrix: FieldMatrix = field(init=False)
    inverse: FieldMatrix = field(init=False)

    def __post_init__(self):
        self.matrix = self.element.completion()
        self.inverse = self.inverse_element.completion()

    def verify(self) -> bool:
        return (self.matrix @ self.inverse).is_identity()

    def encrypt(self, z: FieldVector) -> FieldVector:
        return z @ self.matrix

    def decrypt(self, c: FieldVector) -> FieldVector:
        return c @ self.inverse


@dataclass
class KeyExchangeResult:
    transcript: Transcript
    key_at_a: SharedKey
    key_at_b: SharedKey
    x: GroupRingElement
    y: GroupRingElement
    retries: int = 0

    @property
    def agreed(self) -> bool:
        return self.key_at_a.element == self.key_at_b.element


def _sample_singular(group: GroupSpec, p: int, rng) -> GroupRingElement:
    # defaults must clear the ceil(n/p) kernel guard, so draw payloads
    # from the large-kernel families where the ring has them
    return sample_singular_element(group, p, rng)


def _combine(
    x: GroupRingElement,
    y: GroupRingElement,
    key_group: GroupSpec | None,
    constant: int,
) -> GroupRingElement:
    if key_group is not None and key_group != x.group:
        if key_group.order != x.group.order:
            raise GroupMismatchError(
                f"key group order {key_group.order} != payload order {x.group.order}"
            )
        x = GroupRingElement(key_group, x.coeffs)
        y = GroupRingElement(key_group, y.coeffs)
    out = x + y + GroupRingElement.identity(x.group, x.p).scale(constant % x.p)
    return out


def _key_from(combined: GroupRingElement) -> SharedKey:
    try:
        inv = combined.inverse()
    except NotInvertibleError as exc:
        raise CombinerSingularError(str(exc)) from exc
    return SharedKey(combined, inv)


def exchange_keys(
    group: GroupSpec,
    p: int,
    *,
    seed: int,
    x: GroupRingElement | None = None,
    y: GroupRingElement | None = None,
    key_group: GroupSpec | None = None,
    combiner_constant: int = 1,
    kernel_threshold: int | None = None,
    max_retries: int = 8,
    channel: Channel | None = None,
) -> KeyExchangeResult:
    """Six-message exchange with left/right mask stripping.

    Supplying x or y pins that party's secret (retry on a singular
    combination is then impossible and raises instead).  key_group
    moves only the final combination into a different listing of the
    same order; the wire traffic stays in the payload ring.
    """
    rng_a, rng_b, rng_ch = spawn_rngs(seed, 3)
    fixed_y = y is not None
    if x is None:
        x = _sample_singular(group, p, rng_a)
    require_large_kernel(x, kernel_threshold)

    transcript = Transcript(
        "keyexchange",
        seed,
        {"group": group.describe(), "p": p, "constant": combiner_constant},
    )
    ch = channel if channel is not None else Channel(transcript, rng_ch)
    ch.transcript = transcript

    mask_a = random_invertible_element(group, p, rng_a)
    mask_a_inv = mask_a.inverse()
    mask_b = random_invertible_element(group, p, rng_b)
    mask_b_inv = mask_b.inverse()

    m1 = ch.send("KE1", "A", (x * mask_a).coeffs, compressed=True)
    m2 = ch.send("KE2", "B", (mask_b * GroupRingElement(group, m1)).coeffs, compressed=True)
    m3 = ch.send("KE3", "A", (GroupRingElement(group, m2) * mask_a_inv).coeffs, compressed=True)
    x_at_b = mask_b_inv * GroupRingElement(group, m3)

    retries = 0
    while True:
        if y is None:
            y = _sample_singular(group, p, rng_b)
        require_large_kernel(y, kernel_threshold)

        mask_b1 = random_invertible_element(group, p, rng_b)
        mask_b1_inv = mask_b1.inverse()
        mask_a2 = random_invertible_element(group, p, rng_a)
        mask_a2_inv = mask_a2.inverse()

        m4 = ch.send("KE4", "B", (mask_b1 * y).coeffs, compressed=True)
        m5 = ch.send("KE5", "A", (GroupRingElement(group, m4) * mask_a2).coeffs, compressed=True)
        m6 = ch.send("KE6", "B", (mask_b1_inv * GroupRingElement(group, m5)).coeffs, compressed=True)
        y_at_a = GroupRingElement(group, m6) * mask_a2_inv

        try:
            key_at_b = _key_from(_combine(x_at_b, y, key_group, combiner_constant))
            key_at_a = _key_from(_combine(x, y_at_a, key_group, combiner_constant))
        except CombinerSingularError:
            if fixed_y or retries >= max_retries:
                raise
            retries += 1
            y = None
            continue
        break

    transcript.verdict = "agreed" if key_at_a.element == key_at_b.element else "mismatch"
    return KeyExchangeResult(transcript, key_at_a, key_at_b, x, y, retries)


def exchange_keys_commuting(
    group: GroupSpec,
    p: int,
    *,
    seed: int,
    x: GroupRingElement | None = None,
    y: GroupRingElement | None = None,
    key_group: GroupSpec | None = None,
    combiner_constant: int = 1,
    kernel_threshold: int | None = None,
    max_retries: int = 8,
    channel: Channel | None = None,
) -> KeyExchangeResult:
    """Right-mask variant; every mask pair in use must commute."""
    rng_a, rng_b, rng_ch = spawn_rngs(seed, 3)
    fixed_y = y is not None
    if x is None:
        x = _sample_singular(group, p, rng_a)
    require_large_kernel(x, kernel_threshold)

    transcript = Transcript(
        "keyexchange-comm",
        seed,
        {"group": group.describe(), "p": p, "constant": combiner_constant},
    )
    ch = channel if channel is not None else Channel(transcript, rng_ch)
    ch.transcript = transcript

    mask_a = random_invertible_element(group, p, rng_a)
    mask_b1 = random_invertible_element(group, p, rng_b)
    if mask_a * mask_b1 != mask_b1 * mask_a:
        raise CommutativityError("masks do not commute")
    mask_a_inv = mask_a.inverse()
    mask_b1_inv = mask_b1.inverse()

    m1 = ch.send("KEC1", "A", (x * mask_a).coeffs, compressed=True)
    m2 = ch.send("KEC2", "B", (GroupRingElement(group, m1) * mask_b1).coeffs, compressed=True)
    m3 = ch.send("KEC3", "A", (GroupRingElement(group, m2) * mask_a_inv).coeffs, compressed=True)
    x_at_b = GroupRingElement(group, m3) * mask_b1_inv

    retries = 0
    while True:
        if y is None:
            y = _sample_singular(group, p, rng_b)
        require_large_kernel(y, kernel_threshold)

        mask_b2 = random_invertible_element(group, p, rng_b)
        mask_a1 = random_invertible_element(group, p, rng_a)
        if mask_a1 * mask_b2 != mask_b2 * mask_a1:
            raise CommutativityError("masks do not commute")
        mask_b2_inv = mask_b2.inverse()
        mask_a1_inv = mask_a1.inverse()

        m4 = ch.send("KEC4", "B", (y * mask_b2).coeffs, compressed=True)
        m5 = ch.send("KEC5", "A", (GroupRingElement(group, m4) * mask_a1).coeffs, compressed=True)
        m6 = ch.send("KEC6", "B", (GroupRingElement(group, m5) * mask_b2_inv).coeffs, compressed=True)
        y_at_a = GroupRingElement(group, m6) * mask_a1_inv

        try:
            key_at_b = _key_from(_combine(x_at_b, y, key_group, combiner_constant))
            key_at_a = _key_from(_combine(x, y_at_a, key_group, combiner_constant))
        except CombinerSingularError:
            if fixed_y or retries >= max_retries:
                raise
            retries += 1
            y = None
            continue
        break

    transcript.verdict = "agreed" if key_at_a.element == key_at_b.element else "mismatch"
    return KeyExchangeResult(transcript, key_at_a, key_at_b, x, y, retries)


@dataclass
class MultiKeyResult:
    blocks: list[KeyExchangeResult]

    @property
    def agreed(self) -> bool:
        return all(b.agreed for b in self.blocks)


def _block_seeds(seed: int, count: int) -> list[int]:
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1)[0]) for c in children]


def exchange_keys_multivector(
    blocks: list[tuple[GroupSpec, int]],
    *,
    seed: int,
    commuting: bool = False,
    combiner_constant: int = 1,
    max_retries: int = 8,
) -> MultiKeyResult:
    """One independent exchange per block; blocks may mix group rings.

    Failures do not abort the remaining blocks; they are collected and
    re-raised together with their block indices.
    """
    runner = exchange_keys_commuting if commuting else exchange_keys
    seeds = _block_seeds(seed, len(blocks))
    results: list[KeyExchangeResult] = []
    failures: list[tuple[int, Exception]] = []
    for i, (group, p) in enumerate(blocks):
        try:
            results.append(
                runner(
                    group,
                    p,
                    seed=seeds[i],
                    combiner_constant=combiner_constant,
                    max_retries=max_retries,
                )
            )
        except Exception as exc:  # noqa: BLE001 - aggregated below
            failures.append((i, exc))
    if failures:
        raise BlockErrorGroup(failures)
    return MultiKeyResult(results)


@dataclass
class CodedKeyExchangeResult:
    transcript: Transcript
    key_at_a: SharedKey
    key_at_b: SharedKey
    data_a: FieldVector
    data_b: FieldVector
    retries: int = 0

    @property
    def agreed(self) -> bool:
        return self.key_at_a.element == self.key_at_b.element


def exchange_keys_coded(
    code_a: CyclicCode,
    code_b: CyclicCode | None = None,
    *,
    seed: int,
    data_a: FieldVector | None = None,
    data_b: FieldVector | None = None,
    errors_per_direction: int = 0,
    combiner_constant: int = 1,
    max_retries: int = 8,
) -> CodedKeyExchangeResult:
    """Key exchange whose payloads are codewords of cyclic codes.

    Each direction's final pass (KE3, KE6) may pick up channel noise.
    Both masks on a direction are circulants, so every wire value is a
    masked codeword still inside the code, and the receiver corrects it
    against the code before stripping the mask.  Codeword completions
    have rank at most r, so the kernel floor n-r comes for free.
    """
    if code_b is None:
        code_b = code_a
    if code_b.n != code_a.n or code_b.p != code_a.p:
        raise GroupMismatchError("both codes must share length and field")
    p = code_a.p
    group = CyclicGroup(code_a.n)
    rng_a, rng_b, rng_ch = spawn_rngs(seed, 3)
    fixed_b = data_b is not None

    if data_a is None:
        data_a = FieldVector(rng_a.integers(0, p, size=code_a.r), p)
    x = code_a.element(code_a.encode(data_a))
    require_large_kernel(x, code_a.n - code_a.r)

    transcript = Transcript(
        "keyexchange-coded",
        seed,
        {
            "group": group.describe(),
            "p": p,
            "codes": [[code_a.n, code_a.r], [code_b.n, code_b.r]],
            "errors_per_direction": errors_per_direction,
        },
    )
    ch = Channel(
        transcript,
        rng_ch,
        error_counts={"KE3": errors_per_direction, "KE6": errors_per_direction},
    )

    mask_a = random_invertible_element(group, p, rng_a)
    mask_a_inv = mask_a.inverse()
    mask_b = random_invertible_element(group, p, rng_b)
    mask_b_inv = mask_b.inverse()

    m1 = ch.send("KE1", "A", (x * mask_a).coeffs, compressed=True)
    m2 = ch.send("KE2", "B", (mask_b * GroupRingElement(group, m1)).coeffs, compressed=True)
    m3 = ch.send("KE3", "A", (GroupRingElement(group, m2) * mask_a_inv).coeffs, compressed=True)
    # m3 carries B x plus noise; B x is still a codeword of code_a
    x_data_at_b = code_a.unencode(
        (mask_b_inv * GroupRingElement(group, code_a.correct(m3))).coeffs
    )
    x_at_b = code_a.element(code_a.encode(x_data_at_b))

    retries = 0
    while True:
        if data_b is None:
            data_b = FieldVector(rng_b.integers(0, p, size=code_b.r), p)
        y = code_b.element(code_b.encode(data_b))
        require_large_kernel(y, code_b.n - code_b.r)

        mask_b1 = random_invertible_element(group, p, rng_b)
        mask_b1_inv = mask_b1.inverse()
        mask_a2 = random_invertible_element(group, p, rng_a)
        mask_a2_inv = mask_a2.inverse()

        m4 = ch.send("KE4", "B", (mask_b1 * y).coeffs, compressed=True)
        m5 = ch.send("KE5", "A", (GroupRingElement(group, m4) * mask_a2).coeffs, compressed=True)
        m6 = ch.send("KE6", "B", (mask_b1_inv * GroupRingElement(group, m5)).coeffs, compressed=True)
        y_data_at_a = code_b.unencode(
            (GroupRingElement(group, code_b.correct(m6)) * mask_a2_inv).coeffs
        )
        y_at_a = code_b.element(code_b.encode(y_data_at_a))

        try:
            key_at_b = _key_from(_combine(x_at_b, y, None, combiner_constant))
            key_at_a = _key_from(_combine(x, y_at_a, None, combiner_constant))
        except CombinerSingularError:
            if fixed_b or retries >= max_retries:
                raise
            retries += 1
            data_b = None
            continue
        break

    transcript.verdict = "agreed" if key_at_a.element == key_at_b.element else "mismatch"
    return CodedKeyExchangeResult(transcript, key_at_a, key_at_b, data_a, data_b, retries)
