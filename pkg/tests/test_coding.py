import itertools

import numpy as np
import pytest

from grcrypt.coding import CyclicCode, completion_rank_bound
from grcrypt.errors import DecodeFailure, NotADivisorError
from grcrypt.ffield import FieldVector


def hamming74():
    return CyclicCode.from_generator_poly(7, 2, [1, 1, 0, 1])


def repetition3():
    return CyclicCode.from_generator_poly(3, 2, [1, 1, 1])


def test_repetition_code_parameters():
    code = repetition3()
    assert (code.n, code.r, code.distance) == (3, 1, 3)
    assert code.t == 1


def test_hamming_code_parameters():
    code = hamming74()
    assert (code.n, code.r, code.distance) == (7, 4, 3)
    assert code.t == 1


def test_generator_must_divide():
    with pytest.raises(NotADivisorError):
        CyclicCode.from_generator_poly(7, 3, [1, 1, 0, 1])


def test_encode_zero():
    code = hamming74()
    assert code.encode([0, 0, 0, 0]).is_zero()


def test_repetition_encode_frozen():
    code = repetition3()
    assert code.encode([1]) == FieldVector([1, 1, 1], 2)


def test_hamming_codewords_distinct_distance3():
    code = hamming74()
    words = [code.encode(list(bits)) for bits in itertools.product([0, 1], repeat=4)]
    assert len({tuple(w.tolist()) for w in words}) == 16
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            assert (a - b).weight() >= 3


def test_codewords_closed_under_shift():
    # cyclic shift of a codeword is again a codeword (the code is an ideal)
    code = hamming74()
    for bits in itertools.product([0, 1], repeat=4):
        w = np.array(code.encode(list(bits)).tolist())
        shifted = FieldVector(np.roll(w, 1), 2)
        assert not any(code.syndrome(shifted))


def test_repetition_majority_frozen():
    code = repetition3()
    assert code.decode(FieldVector([1, 0, 1], 2)) == FieldVector([1], 2)


def test_clean_roundtrip():
    code = hamming74()
    rng = np.random.default_rng(6)
    for _ in range(50):
        msg = FieldVector(rng.integers(0, 2, size=4), 2)
        assert code.decode(code.encode(msg)) == msg
        assert code.unencode(code.encode(msg)) == msg


def test_hamming_corrects_all_single_errors():
    code = hamming74()
    hits = 0
    for bits in itertools.product([0, 1], repeat=4):
        msg = FieldVector(list(bits), 2)
        word = code.encode(msg)
        for pos in range(7):
            flipped = word.values.copy()
            flipped[pos] ^= 1
            assert code.decode(FieldVector(flipped, 2)) == msg
            hits += 1
    assert hits == 112


def test_two_errors_flagged_or_miscorrected():
    code = hamming74()
    msg = FieldVector([1, 0, 1, 1], 2)
    word = code.encode(msg)
    outcomes = set()
    for i, j in itertools.combinations(range(7), 2):
        broken = word.values.copy()
        broken[i] ^= 1
        broken[j] ^= 1
        try:
            got = code.decode(FieldVector(broken, 2))
            outcomes.add("miscorrected" if got != msg else "lucky")
        except DecodeFailure:
            outcomes.add("flagged")
    assert "lucky" not in outcomes
    assert outcomes <= {"miscorrected", "flagged"}


def test_correct_preserves_codewords():
    code = hamming74()
    rng = np.random.default_rng(16)
    for _ in range(30):
        word = code.encode(rng.integers(0, 2, size=4))
        assert code.correct(word) == word


# ---------------------------------------------------------------------
# completion rank of encoded payloads
# ---------------------------------------------------------------------

def test_rank_bound_zero_message():
    report = completion_rank_bound(hamming74(), [0, 0, 0, 0])
    assert report.rank == 0 and report.holds


def test_rank_bound_hamming_exhaustive():
    code = hamming74()
    for bits in itertools.product([0, 1], repeat=4):
        report = completion_rank_bound(code, list(bits))
        assert report.holds
        assert report.rank <= 4
        assert report.kernel_dim >= 3


def test_rank_bound_repetition_frozen():
    report = completion_rank_bound(repetition3(), [1])
    assert report.rank == 1
    assert report.bound == 1


def test_nonbinary_repetition_roundtrip():
    code = CyclicCode.from_generator_poly(5, 3, [1, 1, 1, 1, 1])
    msg = FieldVector([2], 3)
    word = code.encode(msg)
    assert word == FieldVector([2, 2, 2, 2, 2], 3)
    broken = word.values.copy()
    broken[3] = 0
    assert code.decode(FieldVector(broken, 3)) == msg
