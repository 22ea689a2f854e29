"""What a transcript gives away, quantified.

The third pass of a transport run carries the data under one invertible
mask, so its completion has the same rank as the data's completion.
An eavesdropper who tries to reproduce that wire value without the mask
faces a linear system whose solution set is a coset of the completion's
left kernel: p^k candidates for kernel dimension k.  The report below
computes k straight off the wire, counts the candidates, and checks the
coset structure explicitly.

The view-discipline helper is the complementary structural check: no
message payload may simply equal a secret (or its first-row form).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ffield import FieldMatrix, FieldVector
from ..groupring import GroupRingElement, group_from_descriptor
from .base import Transcript

FINAL_PASS_TAGS = ("TP3", "TPP3", "KE3", "KEC3")


@dataclass(frozen=True)
class AmbiguityReport:
    scheme: str
    n: int
    p: int
    kernel_dim: int
    solution_count: int
    bound: int
    coset_verified: bool

    @property
    def holds(self) -> bool:
        return self.kernel_dim >= self.bound


def _completion_of(message, transcript: Transcript) -> FieldMatrix:
    if isinstance(message.payload, FieldMatrix):
        return message.payload
    group = group_from_descriptor(transcript.params["group"])
    return GroupRingElement(group, message.payload).completion()


def ambiguity_report(
    transcript: Transcript,
    *,
    tag: str | None = None,
    bound: int | None = None,
    rng=None,
) -> AmbiguityReport:
    """Kernel dimension and candidate count for one wire message.

    tag defaults to the first final-pass message present.  bound
    defaults to ceil(n / p): the kernel floor for payloads vanishing
    at the p-th power, which is how the samplers arrange them.
    """
    if tag is None:
        for t in FINAL_PASS_TAGS:
            try:
                message = transcript.by_tag(t)
                break
            except KeyError:
                continue
        else:
            raise KeyError(f"transcript has none of {FINAL_PASS_TAGS}")
    else:
        message = transcript.by_tag(tag)

    m = _completion_of(message, transcript)
    p = m.p
    n = m.rows
    kernel_dim = m.kernel_dim()
    if bound is None:
        bound = -(-n // p)

    # the observable system: reproduce w @ M knowing only the wire value w
    rng = rng if rng is not None else np.random.default_rng(0)
    w = FieldVector(m.first_row().values, p)
    target = w @ m
    ok = True
    basis = m.kernel_basis()
    for v in basis:
        if (w + v) @ m != target:
            ok = False
    if kernel_dim:
        stacked = FieldMatrix(np.array([v.values for v in basis]), p)
        if stacked.rank() != kernel_dim:
            ok = False
    if kernel_dim < n:
        # a uniformly random vector should generically leave the coset
        for _ in range(4):
            probe = FieldVector(rng.integers(0, p, size=n), p)
            if (probe @ m != FieldVector(np.zeros(n, dtype=np.int64), p)):
                break
        else:
            ok = False

    return AmbiguityReport(
        transcript.scheme, n, p, kernel_dim, p**kernel_dim, bound, ok
    )


def _wire_forms(value) -> list[FieldVector | FieldMatrix]:
    """Every representation of a secret that could appear on the wire."""
    if isinstance(value, GroupRingElement):
        return [value.coeffs, value.completion()]
    if isinstance(value, FieldMatrix):
        return [value, value.first_row()]
    if isinstance(value, FieldVector):
        return [value]
    raise TypeError(f"not a wire value: {type(value).__name__}")


def view_violations(
    transcript: Transcript, secrets: dict[str, object]
) -> list[tuple[str, str]]:
    """Message tags whose payload equals a secret, in any wire form.

    Empty result = the transcript never shows a secret in the clear.
    Zero payloads are ignored: a zero data vector legitimately makes
    wire values coincide with the zero secret without leaking anything.
    """
    found = []
    for msg in transcript.messages:
        payload = msg.payload
        if _is_zero(payload):
            continue
        for name, secret in secrets.items():
            for form in _wire_forms(secret):
                if type(form) is type(payload) and form == payload:
                    found.append((msg.tag, name))
                    break
    return found


def _is_zero(payload) -> bool:
    return bool(np.all(payload.values == 0))
