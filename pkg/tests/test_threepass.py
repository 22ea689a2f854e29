import numpy as np
import pytest

from grcrypt.coding import CyclicCode
from grcrypt.constructions import (
    embed_doubled,
    make_singular,
    random_invertible_element,
    random_invertible_matrix,
    sample_nilpotent_elemabelian,
)
from grcrypt.errors import CommutativityError, DecodeFailure, KernelTooSmallError
from grcrypt.ffield import FieldMatrix, FieldVector
from grcrypt.groupring import (
    CyclicGroup,
    DihedralGroup,
    ElemAbelianGroup,
    GroupRingElement,
)
from grcrypt.protocols import (
    Channel,
    Transcript,
    coded_three_pass,
    three_pass_commuting,
    three_pass_general,
    three_pass_protected,
)


def nilpotent(p, k, seed):
    return sample_nilpotent_elemabelian(p, k, seed).element


def test_identity_masks_put_x_on_the_wire():
    g = ElemAbelianGroup(2, 4)
    x = nilpotent(2, 4, 0)
    one = GroupRingElement.identity(g, 2)
    res = three_pass_general(x, seed=0, mask_a=one, mask_b=one)
    assert res.exact
    for msg in res.transcript.messages:
        assert msg.payload == x.coeffs


def test_general_roundtrip_involutory_masks():
    g = ElemAbelianGroup(2, 4)
    for seed in range(60):
        x = nilpotent(2, 4, seed)
        res = three_pass_general(x, seed=seed)
        assert res.exact
        assert res.kernel_dim >= 8


def test_general_rejects_small_kernel():
    g = CyclicGroup(8)
    x = GroupRingElement.identity(g, 3)
    with pytest.raises(KernelTooSmallError):
        three_pass_general(x, seed=0)


def test_general_matrix_mask_route():
    rng = np.random.default_rng(77)
    g = ElemAbelianGroup(3, 2)
    for seed in range(30):
        x = nilpotent(3, 2, seed)
        b = random_invertible_matrix(9, 3, rng)
        res = three_pass_general(x, seed=seed, mask_b=b)
        assert not res.compressed
        assert res.exact


def test_compressed_flag_needs_element_mask():
    x = nilpotent(3, 2, 1)
    b = random_invertible_matrix(9, 3, np.random.default_rng(0))
    with pytest.raises(CommutativityError):
        three_pass_general(x, seed=1, mask_b=b, compressed=True)


def test_commuting_roundtrip():
    for seed in range(60):
        x = nilpotent(3, 2, seed)
        res = three_pass_commuting(x, seed=seed)
        assert res.exact
        assert res.compressed


def test_commuting_identity_masks_echo():
    g = ElemAbelianGroup(3, 2)
    x = nilpotent(3, 2, 5)
    one = GroupRingElement.identity(g, 3)
    res = three_pass_commuting(x, seed=5, mask_a=one, mask_b=one)
    assert res.exact
    assert all(m.payload == x.coeffs for m in res.transcript.messages)


def test_commuting_rejects_noncommuting_masks():
    g = DihedralGroup(3)
    x = make_singular(
        GroupRingElement.from_coeffs(g, 3, [1, 2, 0, 1, 1, 0])
    )
    rot = GroupRingElement.from_coeffs(g, 3, [0, 1, 0, 0, 0, 0])
    ref = GroupRingElement.from_coeffs(g, 3, [0, 0, 0, 1, 0, 0])
    assert rot * ref != ref * rot
    with pytest.raises(CommutativityError):
        three_pass_commuting(x, seed=0, mask_a=rot, mask_b=ref)


# ---------------------------------------------------------------------
# protected rectangular payloads
# ---------------------------------------------------------------------

def mask_pair(group, p, rng):
    a = random_invertible_element(group, p, rng)
    b = random_invertible_element(group, p, rng)
    return a.completion(), b.completion()


def test_protected_identity_degenerate():
    payload = FieldMatrix([[1, 2], [0, 1], [2, 2]], 3)
    eye3, eye2 = FieldMatrix.identity(3, 3), FieldMatrix.identity(2, 3)
    res = three_pass_protected(payload, (eye3, eye3), (eye2, eye2), seed=0)
    assert res.exact
    assert all(m.payload == payload for m in res.transcript.messages)


def test_protected_mixed_rings():
    rng = np.random.default_rng(31)
    left_group = CyclicGroup(8)
    right_group = ElemAbelianGroup(3, 1)
    for seed in range(30):
        payload = FieldMatrix(rng.integers(0, 3, size=(8, 3)), 3)
        res = three_pass_protected(
            payload,
            mask_pair(left_group, 3, rng),
            mask_pair(right_group, 3, rng),
            seed=seed,
        )
        assert res.exact


def test_protected_swapped_bob_masks_rejected():
    rng = np.random.default_rng(32)
    a1, b1 = mask_pair(CyclicGroup(4), 2, rng)
    a2, b2 = mask_pair(ElemAbelianGroup(2, 2), 2, rng)
    payload = FieldMatrix(rng.integers(0, 2, size=(4, 4)), 2)
    assert three_pass_protected(payload, (a1, b1), (a2, b2), seed=0).exact
    with pytest.raises(CommutativityError):
        three_pass_protected(payload, (a1, b2), (a2, b1), seed=0)


# ---------------------------------------------------------------------
# coded payloads and channel noise
# ---------------------------------------------------------------------

def hamming74():
    return CyclicCode.from_generator_poly(7, 2, [1, 1, 0, 1])


def test_coded_clean_channel():
    code = hamming74()
    rng = np.random.default_rng(41)
    for seed in range(40):
        msg = FieldVector(rng.integers(0, 2, size=4), 2)
        res = coded_three_pass(msg, code, seed=seed)
        assert res.exact
        assert res.corrected_symbols == 0


def test_coded_corrects_final_pass_error():
    code = hamming74()
    rng = np.random.default_rng(42)
    for seed in range(60):
        msg = FieldVector(rng.integers(0, 2, size=4), 2)
        res = coded_three_pass(msg, code, seed=seed, errors_on_final=1)
        assert res.exact
        assert res.corrected_symbols == 1


def test_coded_two_errors_never_silently_pass():
    code = hamming74()
    rng = np.random.default_rng(43)
    for seed in range(40):
        msg = FieldVector(rng.integers(0, 2, size=4), 2)
        try:
            res = coded_three_pass(msg, code, seed=seed, errors_on_final=2)
        except DecodeFailure:
            continue
        assert not res.exact


def test_coded_early_pass_errors_smear():
    # errors before the final pass are amplified by the unmasking
    # convolutions, so correction cannot be relied on there
    code = hamming74()
    msg = FieldVector([1, 0, 1, 1], 2)
    transcript = Transcript("probe")
    rng = np.random.default_rng(7)
    channel = Channel(transcript, rng, error_counts={"TP1": 1})
    res = coded_three_pass(msg, code, seed=11, channel=channel)
    assert not res.exact


def test_coded_wire_stays_inside_code():
    code = hamming74()
    msg = FieldVector([0, 1, 1, 0], 2)
    res = coded_three_pass(msg, code, seed=3)
    for m in res.transcript.messages:
        assert not any(code.syndrome(m.payload))
