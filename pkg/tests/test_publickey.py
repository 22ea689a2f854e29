import numpy as np
import pytest

from grcrypt.errors import (
    AuthFailure,
    BadSplitError,
    DimensionMismatchError,
    GroupMismatchError,
    KernelTooSmallError,
    NoRootOfUnityError,
    TamperDetectedError,
)
from grcrypt.ffield import FieldVector
from grcrypt.groupring import CyclicGroup, GroupRingElement
from grcrypt.idempotents import combine_element
from grcrypt.protocols import (
    Ciphertext,
    decrypt,
    decrypt_multi,
    encrypt,
    encrypt_multi,
    generate_keypair,
    generate_multi_keypair,
    privatize,
    privatize_check,
    privatize_partial,
    publish_partial_key,
)


def identity_mask(n, p):
    coeffs = np.zeros(n, dtype=np.int64)
    coeffs[0] = 1
    return GroupRingElement.from_coeffs(CyclicGroup(n), p, coeffs)


# ---------------------------------------------------------------------
# two-component keypair
# ---------------------------------------------------------------------

def test_worked_example_n2_p5():
    # over Z_5[Cyclic(2)] the rank-one idempotents are E0 = (3,3) and
    # E1 = (3,2); with weights 2 on E0 and 3 on E1 and identity masks,
    # X = 2 E0 = (1,1) and Y = 3 E1 = (4,1) appear bare as the pk
    ident = identity_mask(2, 5)
    pk, sk = generate_keypair(
        2, 5, seed=0,
        x_weights=[2, 0], y_weights=[0, 3],
        mask_a1=ident, mask_a2=ident,
    )
    assert list(pk.components[0].values) == [1, 1]
    assert list(pk.components[1].values) == [4, 1]

    ct = encrypt([1, 1], pk)
    assert list(ct.components[0].values) == [2, 2]
    assert list(ct.components[1].values) == [0, 0]
    assert list(decrypt(ct, sk).values) == [1, 1]


def test_zero_data_roundtrip():
    pk, sk = generate_keypair(4, 5, seed=1)
    ct = encrypt([0, 0, 0, 0], pk)
    assert decrypt(ct, sk) == FieldVector([0, 0, 0, 0], 5)


def test_roundtrip_many_rings():
    for n, p in [(2, 5), (4, 5), (6, 7)]:
        for seed in range(25):
            pk, sk = generate_keypair(n, p, seed=seed)
            rng = np.random.default_rng(seed + 1000)
            z = FieldVector(rng.integers(0, p, size=n), p)
            assert decrypt(encrypt(z, pk), sk) == z


def test_tampered_ciphertext_detected():
    pk, sk = generate_keypair(6, 7, seed=4)
    ct = encrypt([1, 0, 2, 0, 3, 0], pk)
    vals = ct.components[0].values.copy()
    vals[3] = (vals[3] + 1) % 7
    bad = Ciphertext((FieldVector(vals, 7), ct.components[1]))
    with pytest.raises(TamperDetectedError):
        decrypt(bad, sk)


def test_wrong_data_length_rejected():
    pk, _ = generate_keypair(4, 5, seed=0)
    with pytest.raises(DimensionMismatchError):
        encrypt([1, 2, 3], pk)


def test_empty_support_rejected():
    with pytest.raises(BadSplitError):
        generate_keypair(4, 5, seed=0, support=())


def test_overlapping_weights_rejected():
    with pytest.raises(BadSplitError):
        generate_keypair(2, 5, seed=0, x_weights=[2, 1], y_weights=[1, 3])


def test_uncovered_idempotent_rejected():
    # index 1 has weight zero on both sides, so X + Y kills E1
    with pytest.raises(BadSplitError):
        generate_keypair(2, 5, seed=0, x_weights=[2, 0], y_weights=[3, 0])


def test_keypair_needs_root_of_unity():
    with pytest.raises(NoRootOfUnityError):
        generate_keypair(3, 5, seed=0)


# ---------------------------------------------------------------------
# privatize handshake
# ---------------------------------------------------------------------

def test_privatize_general_roundtrip():
    pk, sk = generate_keypair(4, 5, seed=7)
    res = privatize(pk, sk, seed=11)
    assert res.key_for_b.components != pk.components
    z = FieldVector([3, 1, 4, 1], 5)
    ct = encrypt(z, res.key_for_b)
    assert decrypt(ct, res.sk_view) == z


def test_privatize_commuting_roundtrip():
    pk, sk = generate_keypair(6, 7, seed=8)
    res = privatize(pk, sk, seed=12, commuting=True)
    z = FieldVector([0, 1, 2, 3, 4, 5], 7)
    assert decrypt(encrypt(z, res.key_for_b), res.sk_view) == z
    # commuting route sends first rows, two messages per round
    tags = [m.tag for m in res.transcript.messages]
    assert tags == ["PPC1.0", "PPC1.1", "PPC2.0", "PPC2.1"]


def test_privatize_actually_changes_the_key():
    # the ring is commutative, so a circulant mask swap commutes through
    # the re-encryption check; decrypting B's ciphertext under the old
    # masks therefore does not raise, it recovers a different vector.
    # what privatize buys is that the old key no longer reads B's data.
    pk, sk = generate_keypair(4, 5, seed=7)
    res = privatize(pk, sk, seed=11)
    z = FieldVector([1, 2, 3, 4], 5)
    ct = encrypt(z, res.key_for_b)
    assert decrypt(ct, res.sk_view) == z
    assert decrypt(ct, sk) != z


def test_privatize_checks_key_pairing():
    pk1, sk1 = generate_keypair(4, 5, seed=1)
    pk2, _ = generate_keypair(4, 5, seed=2)
    with pytest.raises(GroupMismatchError):
        privatize(pk2, sk1, seed=0)


# ---------------------------------------------------------------------
# partial (singular) published keys
# ---------------------------------------------------------------------

def test_partial_key_agreement():
    g = CyclicGroup(6)
    for seed in range(20):
        partial = publish_partial_key(g, 3, seed=seed)
        res = privatize_partial(partial, g, 3, seed=seed + 50)
        assert res.agreed
        assert res.transcript.verdict == "agreed"


def test_partial_key_identity_wrapper():
    # with A's wrapper pinned to the identity, the second wire message
    # is exactly the agreed key
    g = CyclicGroup(6)
    partial = publish_partial_key(g, 3, seed=5)
    res = privatize_partial(
        partial, g, 3, seed=6, mask_a=identity_mask(6, 3)
    )
    assert res.agreed
    assert res.transcript.by_tag("PPK2").payload == res.key_at_a


def test_partial_key_rejects_invertible_payload():
    g = CyclicGroup(6)
    y = identity_mask(6, 3)
    with pytest.raises(KernelTooSmallError):
        publish_partial_key(g, 3, seed=0, y=y)


# ---------------------------------------------------------------------
# multi-component keys with a reserved check slot
# ---------------------------------------------------------------------

def test_multi_roundtrip():
    mpk, msk = generate_multi_keypair(6, 7, 3, seed=3)
    z = FieldVector([1, 2, 3, 4, 5, 6], 7)
    ct = encrypt_multi(z, mpk)
    assert len(ct) == 3
    assert decrypt_multi(ct, msk) == z


def test_multi_component_bounds():
    with pytest.raises(BadSplitError):
        generate_multi_keypair(6, 7, 1, seed=0)
    with pytest.raises(BadSplitError):
        generate_multi_keypair(6, 7, 7, seed=0)


def test_multi_component_count_checked():
    mpk, msk = generate_multi_keypair(4, 5, 2, seed=0)
    ct = encrypt_multi([1, 2, 3, 4], mpk)
    with pytest.raises(DimensionMismatchError):
        decrypt_multi(ct[:1], msk)


def test_multi_random_tamper_hits_reserved_check():
    # a blind one-symbol flip shifts the recovered z off its coset, so
    # the reserved component no longer re-encrypts to the wire value
    mpk, msk = generate_multi_keypair(6, 7, 3, seed=3)
    ct = encrypt_multi([1, 2, 3, 4, 5, 6], mpk)
    vals = ct[1].values.copy()
    vals[0] = (vals[0] + 1) % 7
    bad = (ct[0], FieldVector(vals, 7), ct[2])
    with pytest.raises(AuthFailure):
        decrypt_multi(bad, msk)


def test_multi_kernel_tamper_names_component():
    # a shift along an idempotent outside the reserved support slips
    # past the reserved check but breaks the owning component's
    # re-encryption; this needs the private masks, so it is a
    # white-box negative control, not an attack
    mpk, msk = generate_multi_keypair(6, 7, 3, seed=3)
    ct = encrypt_multi([1, 2, 3, 4, 5, 6], mpk)

    support_2 = [i for i, w in enumerate(msk.weights[2]) if w]
    ek_weights = np.zeros(6, dtype=np.int64)
    ek_weights[support_2[0]] = 1
    shift = combine_element(msk.idempotents, ek_weights) * msk.masks[1]

    bad = list(ct)
    bad[1] = (GroupRingElement(mpk.group, bad[1]) + shift).coeffs
    with pytest.raises(TamperDetectedError) as exc:
        decrypt_multi(tuple(bad), msk)
    assert "component 1" in str(exc.value)


def test_privatize_check_rekeys_reserved_slot():
    mpk, msk = generate_multi_keypair(6, 7, 3, seed=3)
    new_pk, new_sk = privatize_check(mpk, msk, seed=9)
    assert new_pk.components[0] != mpk.components[0]
    assert new_pk.components[1:] == mpk.components[1:]
    z = FieldVector([6, 5, 4, 3, 2, 1], 7)
    assert decrypt_multi(encrypt_multi(z, new_pk), new_sk) == z


def test_old_multi_ciphertext_garbles_after_rekey():
    # same commutativity caveat as the two-component case: a ciphertext
    # under the pre-rekey reserved component still passes the checks,
    # but the recovered vector is wrong on the reserved support
    mpk, msk = generate_multi_keypair(6, 7, 3, seed=3)
    z = FieldVector([1, 2, 3, 4, 5, 6], 7)
    ct = encrypt_multi(z, mpk)
    _, new_sk = privatize_check(mpk, msk, seed=9)
    assert decrypt_multi(ct, new_sk) != z
