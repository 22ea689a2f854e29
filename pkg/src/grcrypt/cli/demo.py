"""Scheme demos: run one protocol end to end, print the wire, verdict.

Every demo is deterministic in (scheme, flags, seed); writing the same
run twice with --out produces byte-identical files.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..coding import CyclicCode
from ..errors import AuthFailure, TamperDetectedError
from ..ffield import FieldMatrix, FieldVector
from ..groupring import CyclicGroup, ElemAbelianGroup, GroupSpec
from ..protocols import (
    Channel,
    Transcript,
    authenticate_session_commuting,
    coded_three_pass,
    exchange_keys,
    prove_origin_commuting,
    three_pass_commuting,
    three_pass_general,
)
from ..protocols.multivector import multivector_run, sample_block_payload
from ..protocols.publickey import decrypt, encrypt, generate_keypair
from .format import KeyFile, serialize, serialize_transcript

SCHEMES = (
    "threepass",
    "threepass-comm",
    "keyexchange",
    "pk",
    "auth",
    "origin-auth",
    "coded-threepass",
    "multivector",
)

FINAL_PASSES = {
    "threepass": ("TP3",),
    "threepass-comm": ("TP3",),
    "keyexchange": ("KE3", "KE6"),
    "coded-threepass": ("TP3",),
}


class UsageError(Exception):
    """Bad flag combination; maps to exit code 2."""


@dataclass
class DemoOptions:
    scheme: str
    group: GroupSpec | None = None
    p: int | None = None
    n: int | None = None
    seed: int = 0
    errors: int | None = None
    noisy_passes: tuple[str, ...] | None = None
    error_prob: float = 0.0
    out: str | None = None


def _resolve_ring(opts: DemoOptions) -> tuple[GroupSpec, int]:
    group = opts.group if opts.group is not None else ElemAbelianGroup(2, 6)
    p = opts.p
    if p is None:
        p = getattr(group, "p", None)
        if p is None:
            raise UsageError(f"--p is required with group {group.describe()!r}")
    return group, int(p)


def _payload_rng(opts: DemoOptions) -> np.random.Generator:
    # separate stream from the runner's own spawn of the same seed
    return np.random.default_rng(np.random.SeedSequence([opts.seed, 0x9D]))


def _noise_channel(opts: DemoOptions) -> Channel | None:
    """Channel carrying the requested error model, or None for a clean wire."""
    if not 0.0 <= opts.error_prob <= 1.0:
        raise UsageError(f"--error-prob {opts.error_prob} outside [0, 1]")
    count = opts.errors or 0
    if count <= 0 and opts.error_prob <= 0.0:
        return None
    tags = opts.noisy_passes
    if tags is None:
        tags = FINAL_PASSES.get(opts.scheme)
    if not tags:
        raise UsageError(f"--noisy-passes is required to add noise to {opts.scheme}")
    rng = np.random.default_rng(np.random.SeedSequence([opts.seed, 0xE7]))
    counts = {tag: count for tag in tags} if count > 0 else None
    probs = {tag: opts.error_prob for tag in tags} if opts.error_prob > 0 else None
    return Channel(Transcript("pending"), rng, error_counts=counts, error_probs=probs)


def _shape(payload) -> str:
    if isinstance(payload, FieldVector):
        return f"vector[{len(payload)}]"
    if isinstance(payload, FieldMatrix):
        return f"matrix[{payload.rows}x{payload.cols}]"
    return type(payload).__name__


def _print_wire(transcript: Transcript, stream, indent: str = "  ") -> None:
    for msg in transcript.messages:
        note = "  (first row)" if msg.compressed else ""
        stream.write(f"{indent}{msg.tag:<12} {msg.sender}  {_shape(msg.payload)}{note}\n")


def _write_out(opts: DemoOptions, text: str, stream) -> None:
    if opts.out:
        Path(opts.out).write_text(text)
        stream.write(f"transcript written to {opts.out}\n")


def _finish_transcript(
    opts: DemoOptions, transcript: Transcript, ok: bool, stream
) -> int:
    if not transcript.verdict:
        transcript.verdict = "ok" if ok else "failed"
    _print_wire(transcript, stream)
    stream.write(f"verdict: {transcript.verdict}\n")
    _write_out(opts, serialize_transcript(transcript), stream)
    return 0 if ok else 1


def run_demo(opts: DemoOptions, stream=None) -> int:
    """Run one scheme; returns the process exit code (0 ok, 1 failure)."""
    if stream is None:
        stream = sys.stdout
    if opts.scheme not in SCHEMES:
        raise UsageError(f"unknown scheme {opts.scheme!r}")
    runner = _RUNNERS[opts.scheme]
    return runner(opts, stream)


def _demo_threepass(opts: DemoOptions, stream) -> int:
    group, p = _resolve_ring(opts)
    x = sample_block_payload(group, p, _payload_rng(opts))
    stream.write(f"scheme: {opts.scheme}  ring: Z_{p}[{group.describe()}]  seed: {opts.seed}\n")
    run = three_pass_commuting if opts.scheme == "threepass-comm" else three_pass_general
    res = run(x, seed=opts.seed, channel=_noise_channel(opts))
    ok = res.exact
    res.transcript.verdict = "recovered" if ok else "mismatch"
    stream.write(f"payload kernel dimension: {res.kernel_dim}\n")
    return _finish_transcript(opts, res.transcript, ok, stream)


def _demo_keyexchange(opts: DemoOptions, stream) -> int:
    group, p = _resolve_ring(opts)
    stream.write(f"scheme: keyexchange  ring: Z_{p}[{group.describe()}]  seed: {opts.seed}\n")
    res = exchange_keys(group, p, seed=opts.seed, channel=_noise_channel(opts))
    ok = res.agreed and res.key_at_a.verify()
    if res.retries:
        stream.write(f"combiner retries: {res.retries}\n")
    return _finish_transcript(opts, res.transcript, ok, stream)


def _demo_pk(opts: DemoOptions, stream) -> int:
    n = opts.n if opts.n is not None else 4
    p = opts.p if opts.p is not None else 5
    stream.write(f"scheme: pk  n: {n}  p: {p}  seed: {opts.seed}\n")
    pk, sk = generate_keypair(n, p, seed=opts.seed)
    rng = _payload_rng(opts)
    z = FieldVector(rng.integers(0, p, size=n), p)
    ct = encrypt(z, pk)
    recovered = decrypt(ct, sk)
    ok = recovered == z
    stream.write(f"  pk0          A  {_shape(pk.components[0])}\n")
    stream.write(f"  pk1          A  {_shape(pk.components[1])}\n")
    stream.write(f"  ct0, ct1     B  2 x {_shape(ct.components[0])}\n")
    tampered = ct.components[0].values.copy()
    tampered[0] = (tampered[0] + 1) % p
    try:
        decrypt(
            type(ct)((FieldVector(tampered, p), ct.components[1])), sk
        )
        tamper_note = "missed"
    except TamperDetectedError:
        tamper_note = "detected"
    stream.write(f"single-symbol tamper: {tamper_note}\n")
    ok = ok and tamper_note == "detected"
    verdict = "recovered" if ok else "failed"
    stream.write(f"verdict: {verdict}\n")
    kf = KeyFile(
        p=p,
        group=pk.group,
        role="transcript",
        notes={"scheme": "pk", "seed": str(opts.seed), "verdict": verdict},
        entries={
            "pk0": pk.components[0],
            "pk1": pk.components[1],
            "ct0": ct.components[0],
            "ct1": ct.components[1],
            "recovered": recovered,
        },
    )
    _write_out(opts, serialize(kf), stream)
    return 0 if ok else 1


def _demo_auth(opts: DemoOptions, stream) -> int:
    group, p = _resolve_ring(opts)
    x = sample_block_payload(group, p, _payload_rng(opts))
    stream.write(f"scheme: auth  ring: Z_{p}[{group.describe()}]  seed: {opts.seed}\n")
    res = authenticate_session_commuting(x, seed=opts.seed, channel=_noise_channel(opts))
    imp = authenticate_session_commuting(x, seed=opts.seed, impostor=True)
    ok = res.exact and not imp.exact
    res.transcript.verdict = "authenticated" if ok else "failed"
    stream.write(f"impostor reconstruction rejected: {'yes' if not imp.exact else 'no'}\n")
    return _finish_transcript(opts, res.transcript, ok, stream)


def _demo_origin_auth(opts: DemoOptions, stream) -> int:
    group, p = _resolve_ring(opts)
    stream.write(f"scheme: origin-auth  ring: Z_{p}[{group.describe()}]  seed: {opts.seed}\n")
    res = prove_origin_commuting(group, p, seed=opts.seed, channel=_noise_channel(opts))
    try:
        prove_origin_commuting(group, p, seed=opts.seed, impostor=True)
        impostor_rejected = False
    except AuthFailure:
        impostor_rejected = True
    ok = res.passed and impostor_rejected
    res.transcript.verdict = "origin verified" if ok else "failed"
    stream.write(f"impostor rejected: {'yes' if impostor_rejected else 'no'}\n")
    return _finish_transcript(opts, res.transcript, ok, stream)


def _demo_coded_threepass(opts: DemoOptions, stream) -> int:
    p = opts.p if opts.p is not None else 2
    if p != 2:
        raise UsageError("coded-threepass demo uses the binary (7,4) Hamming code")
    code = CyclicCode.from_generator_poly(7, 2, [1, 1, 0, 1])
    errors = opts.errors if opts.errors is not None else 1
    rng = _payload_rng(opts)
    message = FieldVector(rng.integers(0, 2, size=code.r), 2)
    stream.write(
        f"scheme: coded-threepass  code: ({code.n},{code.r}) d={code.distance}"
        f"  errors on final pass: {errors}  seed: {opts.seed}\n"
    )
    res = coded_three_pass(message, code, seed=opts.seed, errors_on_final=errors)
    ok = res.exact
    res.transcript.verdict = "recovered" if ok else "mismatch"
    stream.write(f"symbols corrected: {res.corrected_symbols}\n")
    return _finish_transcript(opts, res.transcript, ok, stream)


def _demo_multivector(opts: DemoOptions, stream) -> int:
    if opts.group is not None:
        group, p = _resolve_ring(opts)
        blocks = [(group, p)] * 3
    else:
        blocks = [
            (ElemAbelianGroup(3, 2), 3),
            (CyclicGroup(6), 3),
            (ElemAbelianGroup(3, 1), 3),
        ]
    stream.write(
        "scheme: multivector (threepass per block)  blocks: "
        + ", ".join(f"Z_{p}[{g.describe()}]" for g, p in blocks)
        + f"  seed: {opts.seed}\n"
    )
    results = multivector_run("threepass", blocks, seed=opts.seed)
    ok = all(r.exact for r in results)
    entries = {}
    for i, res in enumerate(results):
        stream.write(f"block {i}:\n")
        _print_wire(res.transcript, stream, indent="    ")
        for msg in res.transcript.messages:
            entries[f"b{i}:{msg.tag}:{msg.sender}"] = msg.payload
    verdict = "recovered" if ok else "mismatch"
    stream.write(f"verdict: {verdict}\n")
    kf = KeyFile(
        p=blocks[0][1],
        group=None,
        role="transcript",
        notes={"scheme": "multivector", "seed": str(opts.seed), "verdict": verdict},
        entries=entries,
    )
    _write_out(opts, serialize(kf), stream)
    return 0 if ok else 1


_RUNNERS = {
    "threepass": _demo_threepass,
    "threepass-comm": _demo_threepass,
    "keyexchange": _demo_keyexchange,
    "pk": _demo_pk,
    "auth": _demo_auth,
    "origin-auth": _demo_origin_auth,
    "coded-threepass": _demo_coded_threepass,
    "multivector": _demo_multivector,
}
