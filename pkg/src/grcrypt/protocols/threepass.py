"""Three-pass message transport without a pre-shared key.

General flow (masks need not commute with anything):

    1. Alice sends x * A            (first row of X A)
    2. Bob   sends B * X * A        (left mask applied)
    3. Alice sends B * X            (right mask stripped)

Bob strips his own mask to read X.  When both masks are elements of the
payload's own group ring every message is determined by its first row
and vectors travel instead of matrices; with a generic matrix mask for
Bob the middle messages go uncompressed.

The commuting variant keeps all three messages as vectors masked on the
right only; the protected variant wraps an arbitrary rectangular matrix
payload between two commuting mask pairs; the coded variant sends a
codeword payload and syndrome-corrects the final pass before unmasking
(valid because a cyclic code is an ideal, so masked codewords are still
codewords).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..coding import CyclicCode
from ..constructions import random_invertible_element
from ..errors import CommutativityError, NotInvertibleError
from ..ffield import FieldMatrix, FieldVector
from ..groupring import CyclicGroup, GroupRingElement
from .base import Channel, Transcript, require_large_kernel, spawn_rngs


def _as_unit_element(mask: GroupRingElement) -> GroupRingElement:
    inv = mask.inverse()  # raises NotInvertibleError for non-units
    return inv


@dataclass
class ThreePassResult:
    transcript: Transcript
    sent: GroupRingElement
    recovered: GroupRingElement
    kernel_dim: int
    compressed: bool

    @property
    def exact(self) -> bool:
        return self.recovered == self.sent


def three_pass_general(
    x: GroupRingElement,
    *,
    seed: int,
    mask_a: GroupRingElement | None = None,
    mask_b: GroupRingElement | FieldMatrix | None = None,
    kernel_threshold: int | None = None,
    compressed: bool | None = None,
    channel: Channel | None = None,
) -> ThreePassResult:
    """Run the general three-pass scheme end to end.

    Alice owns x and mask_a (same ring as x); Bob owns mask_b, either a
    same-ring element or any invertible matrix of matching size.  The
    payload must already have a large-kernel completion (embed it or
    zero its augmentation first); require_large_kernel enforces that.
    """
    rng_a, rng_b, rng_ch = spawn_rngs(seed, 3)
    group, p = x.group, x.p
    kernel_dim = require_large_kernel(x, kernel_threshold)

    if mask_a is None:
        mask_a = random_invertible_element(group, p, rng_a)
    mask_a_inv = _as_unit_element(mask_a)
    if mask_b is None:
        mask_b = random_invertible_element(group, p, rng_b)

    b_is_element = isinstance(mask_b, GroupRingElement)
    if compressed is None:
        compressed = b_is_element
    if compressed and not b_is_element:
        raise CommutativityError("compressed transmission needs a same-type Bob mask")

    transcript = Transcript(
        "threepass",
        seed,
        {"group": group.describe(), "p": p, "compressed": compressed},
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    if compressed:
        mask_b_inv = _as_unit_element(mask_b)
        m1 = ch.send("TP1", "A", (x * mask_a).coeffs, compressed=True)
        # Bob completes the vector and multiplies on the left; with a
        # same-type mask that is just another convolution
        step2 = mask_b * GroupRingElement(group, m1)
        m2 = ch.send("TP2", "B", step2.coeffs, compressed=True)
        step3 = GroupRingElement(group, m2) * mask_a_inv
        m3 = ch.send("TP3", "A", step3.coeffs, compressed=True)
        recovered = mask_b_inv * GroupRingElement(group, m3)
    else:
        if b_is_element:
            b_mat = mask_b.completion()
        else:
            b_mat = mask_b
        if b_mat.rows != group.order or b_mat.cols != group.order:
            raise NotInvertibleError(
                f"Bob mask is {b_mat.rows}x{b_mat.cols}, need {group.order}"
            )
        b_mat_inv = b_mat.inverse()
        a_mat_inv = mask_a_inv.completion()
        m1 = ch.send("TP1", "A", (x * mask_a).coeffs, compressed=True)
        step2 = b_mat @ GroupRingElement(group, m1).completion()
        m2 = ch.send("TP2", "B", step2)
        step3 = m2 @ a_mat_inv
        m3 = ch.send("TP3", "A", step3)
        recovered = GroupRingElement(group, (b_mat_inv @ m3).first_row())

    return ThreePassResult(transcript, x, recovered, kernel_dim, compressed)


def three_pass_commuting(
    x: GroupRingElement,
    *,
    seed: int,
    mask_a: GroupRingElement | None = None,
    mask_b: GroupRingElement | None = None,
    kernel_threshold: int | None = None,
    channel: Channel | None = None,
) -> ThreePassResult:
    """Right-mask-only variant for masks from one commutative family."""
    rng_a, rng_b, _ = spawn_rngs(seed, 3)
    group, p = x.group, x.p
    kernel_dim = require_large_kernel(x, kernel_threshold)

    if mask_a is None:
        mask_a = random_invertible_element(group, p, rng_a)
    if mask_b is None:
        mask_b = random_invertible_element(group, p, rng_b)
    if mask_a * mask_b != mask_b * mask_a:
        raise CommutativityError("masks do not commute")
    mask_a_inv = _as_unit_element(mask_a)
    mask_b_inv = _as_unit_element(mask_b)

    transcript = Transcript(
        "threepass-comm", seed, {"group": group.describe(), "p": p}
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    m1 = ch.send("TP1", "A", (x * mask_a).coeffs, compressed=True)
    m2 = ch.send("TP2", "B", (GroupRingElement(group, m1) * mask_b).coeffs, compressed=True)
    m3 = ch.send("TP3", "A", (GroupRingElement(group, m2) * mask_a_inv).coeffs, compressed=True)
    recovered = GroupRingElement(group, m3) * mask_b_inv

    return ThreePassResult(transcript, x, recovered, kernel_dim, True)


@dataclass
class ProtectedResult:
    transcript: Transcript
    sent: FieldMatrix
    recovered: FieldMatrix

    @property
    def exact(self) -> bool:
        return self.recovered == self.sent


def _to_matrix(mask) -> FieldMatrix:
    if isinstance(mask, GroupRingElement):
        return mask.completion()
    return mask


def three_pass_protected(
    payload: FieldMatrix,
    left_pair: tuple,
    right_pair: tuple,
    *,
    seed: int,
    channel: Channel | None = None,
) -> ProtectedResult:
    """Both-sided masking of a rectangular matrix payload.

    left_pair = (Alice's left mask, Bob's left mask) must commute with
    each other and act on the rows; right_pair likewise on the columns.
    No other commutativity is needed, so the two sides may come from
    completely different rings.
    """
    a1, b1 = (_to_matrix(m) for m in left_pair)
    a2, b2 = (_to_matrix(m) for m in right_pair)
    for name, pair in (("left", (a1, b1)), ("right", (a2, b2))):
        if pair[0] @ pair[1] != pair[1] @ pair[0]:
            raise CommutativityError(f"{name} masks do not commute")
    if a1.rows != payload.rows or a2.rows != payload.cols:
        raise NotInvertibleError(
            f"mask sizes {a1.rows}, {a2.rows} against payload "
            f"{payload.rows}x{payload.cols}"
        )
    a1_inv, a2_inv = a1.inverse(), a2.inverse()
    b1_inv, b2_inv = b1.inverse(), b2.inverse()

    transcript = Transcript(
        "threepass-protected", seed, {"shape": [payload.rows, payload.cols], "p": payload.p}
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    m1 = ch.send("TPP1", "A", a1 @ payload @ a2)
    m2 = ch.send("TPP2", "B", b1 @ m1 @ b2)
    m3 = ch.send("TPP3", "A", a1_inv @ m2 @ a2_inv)
    recovered = b1_inv @ m3 @ b2_inv
    return ProtectedResult(transcript, payload, recovered)


@dataclass
class CodedResult:
    transcript: Transcript
    sent_message: FieldVector
    recovered_message: FieldVector
    corrected_symbols: int

    @property
    def exact(self) -> bool:
        return self.recovered_message == self.sent_message


def coded_three_pass(
    message,
    code: CyclicCode,
    *,
    seed: int,
    errors_on_final: int = 0,
    channel: Channel | None = None,
) -> CodedResult:
    """Commuting three-pass over an encoded payload with channel noise.

    The payload is message * G, whose completion has rank at most r and
    so needs no separate singularity step.  Both masks are invertible
    circulants, which keeps every wire value inside the code (an ideal);
    Bob therefore corrects the noisy final pass against the code first
    and unmasks afterwards, recovering the message exactly whenever at
    most t symbols were hit.
    """
    rng_a, rng_b, rng_ch = spawn_rngs(seed, 3)
    group = CyclicGroup(code.n)
    p = code.p
    msg = message if isinstance(message, FieldVector) else FieldVector(message, p)
    x = code.element(code.encode(msg))

    mask_a = random_invertible_element(group, p, rng_a)
    mask_b = random_invertible_element(group, p, rng_b)
    mask_a_inv = mask_a.inverse()
    mask_b_inv = mask_b.inverse()

    transcript = Transcript(
        "coded-threepass",
        seed,
        {
            "group": group.describe(),
            "p": p,
            "code": [code.n, code.r],
            "errors_on_final": errors_on_final,
        },
    )
    if channel is None:
        channel = Channel(transcript, rng_ch, error_counts={"TP3": errors_on_final})
    else:
        channel.transcript = transcript
        if errors_on_final:
            channel.error_counts.setdefault("TP3", errors_on_final)

    m1 = channel.send("TP1", "A", (x * mask_a).coeffs, compressed=True)
    m2 = channel.send(
        "TP2", "B", (GroupRingElement(group, m1) * mask_b).coeffs, compressed=True
    )
    m3 = channel.send(
        "TP3", "A", (GroupRingElement(group, m2) * mask_a_inv).coeffs, compressed=True
    )

    # correct against the code BEFORE unmasking: m3 should be the
    # codeword x * mask_b plus channel noise
    corrected = code.correct(m3)
    corrected_symbols = int(np.count_nonzero((m3 - corrected).values))
    unmasked = mask_b_inv * GroupRingElement(group, corrected)
    recovered = code.unencode(unmasked.coeffs)

    return CodedResult(transcript, msg, recovered, corrected_symbols)
