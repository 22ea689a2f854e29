"""Shared protocol plumbing: messages, transcripts, and the channel.

Every scheme in this package runs both parties lockstep inside one
function, but every transmitted value crosses a Channel object that can
tamper with payloads (adversary simulations) or inject symbol errors
(noisy-channel runs), and that records the delivered messages in order.
Messages and their payloads are immutable, so a transcript is a faithful
record of the wire.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import KernelTooSmallError
from ..ffield import FieldMatrix, FieldVector
from ..groupring import GroupRingElement


@dataclass(frozen=True)
class Message:
    """One transmission: tag, sending party, payload, compression flag.

    compressed=True marks a first-row payload standing in for a full
    same-type matrix; the receiving side rebuilds the completion.
    """

    tag: str
    sender: str
    payload: FieldVector | FieldMatrix
    compressed: bool = False


@dataclass
class Transcript:
    """Ordered wire record of one protocol run."""

    scheme: str
    seed: int | None = None
    params: dict = field(default_factory=dict)
    messages: list[Message] = field(default_factory=list)
    verdict: str = ""

    def add(self, msg: Message) -> None:
        self.messages.append(msg)

    def by_tag(self, tag: str) -> Message:
        for m in self.messages:
            if m.tag == tag:
                return m
        raise KeyError(tag)

    def payloads(self):
        return [m.payload for m in self.messages]


TamperHook = Callable[["Channel", str, FieldVector | FieldMatrix], FieldVector | FieldMatrix | None]


class Channel:
    """Wire between the two parties; applies tampering, then noise."""

    def __init__(
        self,
        transcript: Transcript,
        rng: np.random.Generator | None = None,
        error_counts: dict[str, int] | None = None,
        error_probs: dict[str, float] | None = None,
        tamper: TamperHook | None = None,
    ):
        self.transcript = transcript
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.error_counts = dict(error_counts or {})
        self.error_probs = dict(error_probs or {})
        for prob in self.error_probs.values():
            if not 0.0 <= prob <= 1.0:
                raise ValueError(f"symbol error probability {prob} outside [0, 1]")
        self.tamper = tamper

    def send(
        self,
        tag: str,
        sender: str,
        payload: FieldVector | FieldMatrix,
        compressed: bool = False,
    ) -> FieldVector | FieldMatrix:
        """Record and return what the other party actually receives."""
        if self.tamper is not None:
            replacement = self.tamper(self, tag, payload)
            if replacement is not None:
                payload = replacement
        count = self.error_counts.get(tag, 0)
        if count:
            payload = _inject_symbol_errors(payload, count, self.rng)
        prob = self.error_probs.get(tag, 0.0)
        if prob:
            payload = _flip_symbols(payload, prob, self.rng)
        self.transcript.add(Message(tag, sender, payload, compressed))
        return payload


def _inject_symbol_errors(
    payload: FieldVector | FieldMatrix, count: int, rng: np.random.Generator
):
    """Add `count` uniform nonzero deltas at distinct flat positions."""
    p = payload.p
    flat = payload.values.reshape(-1).copy()
    positions = rng.choice(flat.shape[0], size=min(count, flat.shape[0]), replace=False)
    for pos in positions:
        flat[pos] = (flat[pos] + int(rng.integers(1, p))) % p
    if isinstance(payload, FieldVector):
        return FieldVector(flat, p)
    return FieldMatrix(flat.reshape(payload.values.shape), p)


def _flip_symbols(
    payload: FieldVector | FieldMatrix, prob: float, rng: np.random.Generator
):
    """Hit each symbol independently with probability `prob`."""
    p = payload.p
    flat = payload.values.reshape(-1).copy()
    hits = rng.random(flat.shape[0]) < prob
    deltas = rng.integers(1, p, size=flat.shape[0])
    flat[hits] = (flat[hits] + deltas[hits]) % p
    if isinstance(payload, FieldVector):
        return FieldVector(flat, p)
    return FieldMatrix(flat.reshape(payload.values.shape), p)


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Independent deterministic streams for the parties and the channel."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def require_large_kernel(
    x: GroupRingElement, threshold: int | None = None
) -> int:
    """Kernel dimension of the completion, guarded against small kernels.

    The default threshold is ceil(order / p): what a nilpotent of index
    at most p is guaranteed to provide.
    """
    n = x.group.order
    if threshold is None:
        threshold = -(-n // x.p)
    dim = n - x.completion().rank()
    if dim < threshold:
        raise KernelTooSmallError(
            f"completion kernel has dimension {dim} < required {threshold}"
        )
    return dim


def first_rows_match(transcript: Transcript, other: Transcript) -> bool:
    """True when the two runs carried the same values on the wire.

    A compressed message is compared against the first row of the
    corresponding full-matrix message.
    """
    if len(transcript.messages) != len(other.messages):
        return False
    for a, b in zip(transcript.messages, other.messages):
        va = a.payload.first_row() if isinstance(a.payload, FieldMatrix) else a.payload
        vb = b.payload.first_row() if isinstance(b.payload, FieldMatrix) else b.payload
        if va != vb:
            return False
    return True
