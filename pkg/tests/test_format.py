import numpy as np
import pytest

from grcrypt.cli.format import (
    KeyFile,
    keyfile_for_element,
    keyfile_from_private,
    keyfile_from_public,
    keyfile_from_shared,
    parse,
    private_from_keyfile,
    public_from_keyfile,
    serialize,
    serialize_transcript,
    shared_from_keyfile,
)
from grcrypt.errors import ParseError
from grcrypt.ffield import FieldMatrix, FieldVector
from grcrypt.groupring import CyclicGroup, ElemAbelianGroup, GroupRingElement
from grcrypt.protocols import decrypt, encrypt, exchange_keys, generate_keypair


def test_element_roundtrip():
    g = ElemAbelianGroup(3, 2)
    x = GroupRingElement.from_coeffs(g, 3, [1, 2, 0, 0, 1, 2, 2, 0, 1])
    kf = keyfile_for_element("x", x)
    back = parse(serialize(kf))
    assert back == kf
    assert back.element("x") == x


def test_full_keyfile_roundtrip():
    kf = KeyFile(
        p=5,
        group=CyclicGroup(4),
        role="testing",
        notes={"made": "by hand", "weights": "none"},
        entries={
            "v": FieldVector([1, 2, 3, 4], 5),
            "m": FieldMatrix(np.arange(16).reshape(4, 4) % 5, 5),
        },
    )
    back = parse(serialize(kf))
    assert back == kf
    assert back.matrix("m") == kf.entries["m"]
    assert back.vector("v") == kf.entries["v"]


def test_serialized_text_shape():
    kf = keyfile_for_element(
        "w", GroupRingElement.from_coeffs(CyclicGroup(2), 3, [1, 2]), role="demo"
    )
    text = serialize(kf)
    assert text.splitlines()[0] == "GRC1"
    assert "group cyclic 2" in text
    assert "field 3" in text
    assert "elem w 1 2" in text
    assert text.endswith("\n")


def test_comments_and_blanks_are_skipped_but_counted():
    text = "GRC1\n\n# a comment\nfield 3\n\nelem v 1 2 0\n"
    kf = parse(text)
    assert kf.p == 3
    assert kf.vector("v") == FieldVector([1, 2, 0], 3)


def test_bad_modulus_reports_line_three():
    text = "GRC1\ngroup cyclic 2\nfield x"
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == 3


def test_missing_header():
    with pytest.raises(ParseError):
        parse("field 3\nelem v 1 2\n")


def test_unknown_directive_line_number_counts_comments():
    text = "GRC1\n# filler\n# filler\nfield 3\nshrug v 1\n"
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == 5
    assert "shrug" in str(exc.value)


def test_entry_before_field_rejected():
    with pytest.raises(ParseError):
        parse("GRC1\nelem v 1 2\nfield 3\n")


def test_coefficient_range_checked():
    with pytest.raises(ParseError) as exc:
        parse("GRC1\nfield 3\nelem v 1 5\n")
    assert "outside" in str(exc.value)


def test_duplicate_entry_rejected():
    with pytest.raises(ParseError):
        parse("GRC1\nfield 3\nelem v 1 2\nelem v 2 1\n")


def test_matrix_row_width_checked():
    text = "GRC1\nfield 2\nmatrix m 2 2\n1 0\n1\n"
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == 5


def test_matrix_truncated_file():
    with pytest.raises(ParseError):
        parse("GRC1\nfield 2\nmatrix m 2 2\n1 0\n")


def test_group_width_mismatch_rejected():
    with pytest.raises(ParseError):
        parse("GRC1\ngroup cyclic 4\nfield 3\nelem v 1 2\n")


def test_many_random_objects_roundtrip():
    # a long mixed soak: vectors, matrices, and whole keyfiles
    rng = np.random.default_rng(0)
    groups = [CyclicGroup(4), ElemAbelianGroup(2, 2), ElemAbelianGroup(3, 1)]
    for trial in range(1000):
        p = int(rng.choice([2, 3, 5]))
        group = groups[trial % len(groups)]
        entries = {}
        entries["a"] = FieldVector(rng.integers(0, p, size=group.order), p)
        if trial % 3 == 0:
            entries["m"] = FieldMatrix(
                rng.integers(0, p, size=(group.order, group.order)), p
            )
        kf = KeyFile(
            p=p,
            group=group if trial % 2 == 0 else None,
            role="soak" if trial % 5 == 0 else "",
            notes={"trial": str(trial)},
            entries=entries,
        )
        assert parse(serialize(kf)) == kf


def test_private_key_file_decrypts():
    pk, sk = generate_keypair(4, 5, seed=3)
    z = FieldVector([4, 0, 2, 1], 5)
    ct = encrypt(z, pk)
    stored = serialize(keyfile_from_private(sk))
    sk_back = private_from_keyfile(parse(stored))
    assert decrypt(ct, sk_back) == z


def test_public_key_file_encrypts():
    pk, sk = generate_keypair(6, 7, seed=6)
    pk_back = public_from_keyfile(parse(serialize(keyfile_from_public(pk))))
    z = FieldVector([1, 0, 0, 2, 0, 3], 7)
    assert decrypt(encrypt(z, pk_back), sk) == z


def test_shared_key_file_roundtrip():
    res = exchange_keys(ElemAbelianGroup(2, 3), 2, seed=4)
    kf = parse(serialize(keyfile_from_shared(res.key_at_a)))
    key = shared_from_keyfile(kf)
    assert key.verify()
    assert key.element == res.key_at_a.element


def test_transcript_serialization():
    res = exchange_keys(ElemAbelianGroup(2, 3), 2, seed=4)
    kf = parse(serialize_transcript(res.transcript))
    assert kf.notes["scheme"] == "keyexchange"
    assert kf.notes["seed"] == "4"
    assert kf.notes["verdict"] == "agreed"
    # compressed wire values are flagged in the entry name
    assert "KE1:A:c" in kf.entries
    assert len(kf.entries) == 6
