"""Person-in-the-middle prevention and origin proofs.

All of these lean on one published artifact per party: a singular
element under an invertible secret mask (the partial key of the
publickey module).  It cannot be inverted, so revealing it gives an
eavesdropper nothing to peel, yet its owner can fold it into a run so
that only someone holding the secret half can finish the algebra.

Session schemes deliver data x from A to B so that nobody else can
step in as B: the final pass is a difference x-mask minus y-mask, and
reassembling x needs y.  Origin proofs are three-step
challenge-responses on the published identity; the verifier can
precompute the expected answer, and only the holder of the secret mask
can produce it.

An impostor flag on each scheme swaps the keyed party for a simulated
adversary holding fresh masks and a random guess at the secret; runs
then end with a wrong reconstruction or an AuthFailure, which is the
negative behaviour the schemes promise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..constructions import random_invertible_element, random_invertible_matrix
from ..errors import (
    AuthFailure,
    BlockErrorGroup,
    CommutativityError,
    DimensionMismatchError,
)
from ..ffield import FieldMatrix, FieldVector
from ..groupring import GroupRingElement, GroupSpec
from .base import Channel, Transcript, require_large_kernel, spawn_rngs
from .publickey import PartialKey, publish_partial_key


@dataclass
class AuthSessionResult:
    transcript: Transcript
    sent: GroupRingElement
    recovered: GroupRingElement
    session_key: FieldVector | FieldMatrix
    impostor: bool = False

    @property
    def exact(self) -> bool:
        return self.recovered == self.sent


def authenticate_session_commuting(
    x: GroupRingElement,
    *,
    seed: int,
    partial: PartialKey | None = None,
    kernel_threshold: int | None = None,
    impostor: bool = False,
    masks: tuple | None = None,
    channel: Channel | None = None,
) -> AuthSessionResult:
    """Five-step delivery of x that only the partial-key owner can read.

    B's published y-mask product rides along: A wraps it, B strips his
    half, and the last pass is the difference of the two threads.  B
    cancels the y thread because he knows y; Eve, who saw only the
    published product, cannot.  With impostor=True the step-3 sender is
    such an Eve, finishing with her own masks and a guessed y.  masks,
    when given, pins (mask_a, mask_a1, mask_b1, mask_b2).
    """
    group, p = x.group, x.p
    rng_a, rng_b, rng_e = spawn_rngs(seed, 3)
    if partial is None:
        partial = publish_partial_key(
            group, p, seed=rng_b, kernel_threshold=kernel_threshold
        )
    if len(partial.published) != group.order:
        raise DimensionMismatchError("partial key length does not match x's ring")

    if masks is None:
        mask_a = random_invertible_element(group, p, rng_a)
        mask_a1 = random_invertible_element(group, p, rng_a)
        fixed_b = None
    else:
        mask_a, mask_a1 = masks[0], masks[1]
        fixed_b = masks[2:4] or None
    for left, right in ((mask_a1, partial.mask),):
        if left * right != right * left:
            raise CommutativityError("session requires a commutative mask family")

    transcript = Transcript(
        "auth-session-comm",
        seed,
        {"group": group.describe(), "p": p, "impostor": impostor},
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    published = GroupRingElement(group, partial.published)
    m2d = ch.send("AUC2.d", "A", (x * mask_a).coeffs, compressed=True)
    m2k = ch.send("AUC2.k", "A", (published * mask_a1).coeffs, compressed=True)

    if impostor:
        eve_1 = random_invertible_element(group, p, rng_e)
        eve_2 = random_invertible_element(group, p, rng_e)
        y_guess = GroupRingElement.from_coeffs(
            group, p, rng_e.integers(0, p, size=group.order)
        )
        m3d = ch.send("AUC3.d", "E", (GroupRingElement(group, m2d) * eve_1).coeffs, compressed=True)
        m3k = ch.send("AUC3.k", "E", (GroupRingElement(group, m2k) * eve_2).coeffs, compressed=True)
        strip_1, strip_2, y_used = eve_1, eve_2, y_guess
    else:
        if fixed_b is None:
            mask_b1 = random_invertible_element(group, p, rng_b)
            mask_b2 = random_invertible_element(group, p, rng_b)
        else:
            mask_b1, mask_b2 = fixed_b
        for left, right in ((mask_a, mask_b1), (mask_a1, mask_b2)):
            if left * right != right * left:
                raise CommutativityError("session requires a commutative mask family")
        unwrapped = GroupRingElement(group, m2k) * partial.mask.inverse()
        m3d = ch.send("AUC3.d", "B", (GroupRingElement(group, m2d) * mask_b1).coeffs, compressed=True)
        m3k = ch.send("AUC3.k", "B", (unwrapped * mask_b2).coeffs, compressed=True)
        strip_1, strip_2, y_used = mask_b1, mask_b2, partial.y

    x_thread = GroupRingElement(group, m3d) * mask_a.inverse()
    y_thread = GroupRingElement(group, m3k) * mask_a1.inverse()
    m4 = ch.send("AUC4", "A", (x_thread - y_thread).coeffs, compressed=True)

    # receiver cancels the y thread with the knowledge only he has
    recovered = (GroupRingElement(group, m4) + y_used * strip_2) * strip_1.inverse()
    transcript.verdict = "delivered" if recovered == x else "mismatch"
    return AuthSessionResult(transcript, x, recovered, y_thread.coeffs, impostor)


def authenticate_session_noncommuting(
    x: GroupRingElement,
    *,
    seed: int,
    partial: PartialKey | None = None,
    kernel_threshold: int | None = None,
    impostor: bool = False,
    masks: tuple | None = None,
    channel: Channel | None = None,
) -> AuthSessionResult:
    """Matrix-mask variant of the session scheme; no commuting needed.

    x rides as a first row (its mask stays same-type so B can complete
    the wire value), everything else is full matrices.  B's published
    product must itself be same-type so A can complete it to Y B.
    masks, when given, pins (mask_a, a1, b1, b2) with mask_a same-type
    and the rest square matrices.
    """
    group, p = x.group, x.p
    n = group.order
    rng_a, rng_b, rng_e = spawn_rngs(seed, 3)
    if partial is None:
        partial = publish_partial_key(
            group, p, seed=rng_b, kernel_threshold=kernel_threshold
        )
    if len(partial.published) != n:
        raise DimensionMismatchError("partial key length does not match x's ring")

    if masks is None:
        mask_a = random_invertible_element(group, p, rng_a)
        a1 = random_invertible_matrix(n, p, rng_a)
        fixed_b = None
    else:
        mask_a, a1 = masks[0], masks[1]
        fixed_b = masks[2:4] or None

    transcript = Transcript(
        "auth-session-noncomm",
        seed,
        {"group": group.describe(), "p": p, "impostor": impostor},
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    key_matrix = GroupRingElement(group, partial.published).completion()
    m2d = ch.send("AUN2.d", "A", (x * mask_a).coeffs, compressed=True)
    m2k = ch.send("AUN2.k", "A", a1 @ key_matrix)

    if impostor:
        eve_1 = random_invertible_matrix(n, p, rng_e)
        eve_2 = random_invertible_matrix(n, p, rng_e)
        y_guess = FieldMatrix(rng_e.integers(0, p, size=(n, n)), p)
        m3d = ch.send("AUN3.d", "E", eve_1 @ GroupRingElement(group, m2d).completion())
        m3k = ch.send("AUN3.k", "E", m2k @ eve_2)
        strip_1, strip_2, y_completion = eve_1, eve_2, y_guess
    else:
        if fixed_b is None:
            b1 = random_invertible_matrix(n, p, rng_b)
            b2 = random_invertible_matrix(n, p, rng_b)
        else:
            b1, b2 = fixed_b
        m3d = ch.send("AUN3.d", "B", b1 @ GroupRingElement(group, m2d).completion())
        unwrapped = m2k @ partial.mask.inverse().completion()
        m3k = ch.send("AUN3.k", "B", unwrapped @ b2)
        strip_1, strip_2, y_completion = b1, b2, partial.y.completion()

    x_thread = m3d @ mask_a.inverse().completion()
    y_thread = a1.inverse() @ m3k
    m4 = ch.send("AUN4", "A", x_thread - y_thread)

    x_completion = strip_1.inverse() @ (m4 + y_completion @ strip_2)
    recovered = GroupRingElement(group, x_completion.first_row())
    transcript.verdict = "delivered" if recovered == x else "mismatch"
    return AuthSessionResult(transcript, x, recovered, y_thread, impostor)


@dataclass
class OriginAuthResult:
    transcript: Transcript
    expected: FieldVector | FieldMatrix
    answered: FieldVector | FieldMatrix

    @property
    def passed(self) -> bool:
        return self.expected == self.answered


def prove_origin_commuting(
    group: GroupSpec,
    p: int,
    *,
    seed: int,
    identity: PartialKey | None = None,
    kernel_threshold: int | None = None,
    impostor: bool = False,
    masks: tuple | None = None,
    channel: Channel | None = None,
) -> OriginAuthResult:
    """Challenge-response on a published identity product, all same-type.

    The verifier wraps A's fresh commitment with a challenge mask and
    expects back the published product under the same challenge; only
    the identity mask's owner can swap her session mask for the secret
    one.  Raises AuthFailure when the answer is wrong, which is how an
    impostor run ends.
    """
    rng_a, rng_b, rng_e = spawn_rngs(seed, 3)
    if identity is None:
        identity = publish_partial_key(
            group, p, seed=rng_a, kernel_threshold=kernel_threshold
        )

    transcript = Transcript(
        "origin-auth-comm",
        seed,
        {"group": group.describe(), "p": p, "impostor": impostor},
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    if masks is None:
        a1 = random_invertible_element(group, p, rng_a)
        b1 = None
    else:
        a1, b1 = masks
    if a1 * identity.mask != identity.mask * a1:
        raise CommutativityError("identity mask must commute with session masks")

    m1 = ch.send("OAC1", "A", (identity.y * a1).coeffs, compressed=True)
    if b1 is None:
        b1 = random_invertible_element(group, p, rng_b)
    m2 = ch.send("OAC2", "B", (GroupRingElement(group, m1) * b1).coeffs, compressed=True)

    responder_mask = (
        random_invertible_element(group, p, rng_e) if impostor else identity.mask
    )
    answer = GroupRingElement(group, m2) * a1.inverse() * responder_mask
    m3 = ch.send("OAC3", "A", answer.coeffs, compressed=True)

    expected = (GroupRingElement(group, identity.published) * b1).coeffs
    result = OriginAuthResult(transcript, expected, m3)
    transcript.verdict = "verified" if result.passed else "rejected"
    if not result.passed:
        raise AuthFailure("origin response does not match the published identity")
    return result


@dataclass
class MatrixIdentity:
    """Published left-masked identity: mask @ completion(y), mask secret."""

    published: FieldMatrix
    y: GroupRingElement
    mask: FieldMatrix


def publish_matrix_identity(
    group: GroupSpec,
    p: int,
    *,
    seed,
    kernel_threshold: int | None = None,
) -> MatrixIdentity:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    from ..constructions import make_singular

    coeffs = rng.integers(0, p, size=group.order)
    y = make_singular(GroupRingElement.from_coeffs(group, p, coeffs))
    require_large_kernel(y, kernel_threshold)
    mask = random_invertible_matrix(group.order, p, rng)
    return MatrixIdentity(mask @ y.completion(), y, mask)


def prove_origin_noncommuting(
    group: GroupSpec,
    p: int,
    *,
    seed: int,
    identity: MatrixIdentity | None = None,
    kernel_threshold: int | None = None,
    impostor: bool = False,
    masks: tuple | None = None,
    channel: Channel | None = None,
) -> OriginAuthResult:
    """Matrix form of the origin proof: answer = mask @ Y @ challenge."""
    n = group.order
    rng_a, rng_b, rng_e = spawn_rngs(seed, 3)
    if identity is None:
        identity = publish_matrix_identity(
            group, p, seed=rng_a, kernel_threshold=kernel_threshold
        )

    transcript = Transcript(
        "origin-auth-noncomm",
        seed,
        {"group": group.describe(), "p": p, "impostor": impostor},
    )
    ch = channel if channel is not None else Channel(transcript)
    ch.transcript = transcript

    if masks is None:
        a1 = random_invertible_matrix(n, p, rng_a)
        b1 = None
    else:
        a1, b1 = masks
    m1 = ch.send("OAN1", "A", a1 @ identity.y.completion())
    if b1 is None:
        b1 = random_invertible_matrix(n, p, rng_b)
    m2 = ch.send("OAN2", "B", m1 @ b1)

    responder_mask = random_invertible_matrix(n, p, rng_e) if impostor else identity.mask
    m3 = ch.send("OAN3", "A", responder_mask @ (a1.inverse() @ m2))

    expected = identity.published @ b1
    result = OriginAuthResult(transcript, expected, m3)
    transcript.verdict = "verified" if result.passed else "rejected"
    if not result.passed:
        raise AuthFailure("origin response does not match the published identity")
    return result


@dataclass
class PreventionBlock:
    sent: GroupRingElement
    recovered: GroupRingElement

    @property
    def exact(self) -> bool:
        return self.recovered == self.sent


@dataclass
class PreventionResult:
    transcript: Transcript
    blocks: list[PreventionBlock]

    @property
    def exact(self) -> bool:
        return all(b.exact for b in self.blocks)


def prevention_run(
    blocks: list[tuple[GroupSpec, int]],
    *,
    seed: int,
    data: list[GroupRingElement] | None = None,
    kernel_threshold: int | None = None,
    channel: Channel | None = None,
) -> PreventionResult:
    """Blockwise session authentication; blocks may mix group rings.

    Each block i runs the commuting difference scheme with its own
    partial key and masks inside one five-step conversation.  A block
    failure (bad mask, kernel guard, length mismatch) is recorded
    against its index and the rest still run.
    """
    rng_a, rng_b, rng_ch = spawn_rngs(seed, 3)
    transcript = Transcript(
        "prevention",
        seed,
        {"blocks": [(g.describe(), p) for g, p in blocks]},
    )
    ch = channel if channel is not None else Channel(transcript, rng_ch)
    ch.transcript = transcript

    results: list[PreventionBlock] = []
    failures: list[tuple[int, Exception]] = []
    for i, (group, p) in enumerate(blocks):
        try:
            if data is not None:
                x = data[i]
                if x.group != group or x.p != p:
                    raise DimensionMismatchError(f"data block {i} not in its ring")
            else:
                x = GroupRingElement.from_coeffs(
                    group, p, rng_a.integers(0, p, size=group.order)
                )
            partial = publish_partial_key(
                group, p, seed=rng_b, kernel_threshold=kernel_threshold
            )
            published = GroupRingElement(group, partial.published)

            mask_a = random_invertible_element(group, p, rng_a)
            mask_a1 = random_invertible_element(group, p, rng_a)
            if mask_a1 * partial.mask != partial.mask * mask_a1:
                raise CommutativityError(f"block {i} masks do not commute")
            m2d = ch.send(f"PR2.d.b{i}", "A", (x * mask_a).coeffs, compressed=True)
            m2k = ch.send(f"PR2.k.b{i}", "A", (published * mask_a1).coeffs, compressed=True)

            mask_b1 = random_invertible_element(group, p, rng_b)
            if mask_a * mask_b1 != mask_b1 * mask_a:
                raise CommutativityError(f"block {i} masks do not commute")
            m3d = ch.send(
                f"PR3.d.b{i}", "B", (GroupRingElement(group, m2d) * mask_b1).coeffs, compressed=True
            )
            bare_key = GroupRingElement(group, m2k) * partial.mask.inverse()
            m3k = ch.send(f"PR3.k.b{i}", "B", bare_key.coeffs, compressed=True)

            x_thread = GroupRingElement(group, m3d) * mask_a.inverse()
            y_bare = GroupRingElement(group, m3k) * mask_a1.inverse()
            m4 = ch.send(f"PR4.b{i}", "A", (x_thread - y_bare).coeffs, compressed=True)

            recovered = (
                GroupRingElement(group, m4) + partial.y
            ) * mask_b1.inverse()
            # the y thread cancels only after scaling: m4 holds x B1' - y,
            # so B adds y back before stripping his mask
            results.append(PreventionBlock(x, recovered))
        except Exception as exc:  # noqa: BLE001 - aggregated below
            failures.append((i, exc))
    if failures:
        raise BlockErrorGroup(failures)
    transcript.verdict = "delivered" if all(b.exact for b in results) else "mismatch"
    return PreventionResult(transcript, results)
