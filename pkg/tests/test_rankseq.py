import warnings

import pytest
from hypothesis import given, settings, strategies as st

from abba import (
    Matrix,
    RankSequence,
    ShapeError,
    ToleranceWarning,
    drops,
    enumerate_tail_sequences,
    is_valid_rank_sequence,
    rank_sequence,
    realize_rank_sequence,
)
from abba.generators import default_rng
from abba.rankseq import _clamped_terms, stabilize


def test_sequences_of_4x4_products(hermitian_normal_pair_4x4):
    a, b = hermitian_normal_pair_4x4
    assert rank_sequence(a @ b).terms == (4, 2, 0)
    assert rank_sequence(b @ a).terms == (4, 2, 1, 0)


def test_identity_sequence():
    seq = rank_sequence(Matrix.identity(5))
    assert seq.terms == (5,) and seq.limit == 5 and seq.n == 5


def test_non_square_rejected():
    with pytest.raises(ShapeError):
        rank_sequence(Matrix.exact([[1, 2]]))


def test_validity():
    assert is_valid_rank_sequence([4, 2, 1, 0])
    assert not is_valid_rank_sequence([4, 3, 0])  # drops 1 then 3
    assert is_valid_rank_sequence([4, 1, 0])  # drops 3 then 1
    assert is_valid_rank_sequence([3, 3, 3])
    assert not is_valid_rank_sequence([2, 3])
    assert not is_valid_rank_sequence([1, -1])
    with pytest.raises(ValueError):
        is_valid_rank_sequence([])


def test_realize_examples():
    j2_plus_j1 = realize_rank_sequence([3, 1, 0])
    assert j2_plus_j1 == Matrix.exact([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert realize_rank_sequence([4]) == Matrix.identity(4)
    m = realize_rank_sequence([4, 2, 1, 0])  # one 3-block, one 1-block
    assert rank_sequence(m).terms == (4, 2, 1, 0)


def test_realize_rejects_invalid():
    with pytest.raises(ValueError):
        realize_rank_sequence([4, 3, 0])


def test_drops():
    assert drops(RankSequence.from_terms((4, 2, 1, 0))) == (2, 1, 1)
    assert drops([5]) == ()
    assert drops([2, 1, 0]) == (1, 1)


def test_enumerate_seven_patterns():
    for n in (4, 5, 7):
        seqs = enumerate_tail_sequences(n, 2)
        assert seqs == [
            (n, 0),
            (n, 1, 0),
            (n, 1),
            (n, 2, 0),
            (n, 2, 1, 0),
            (n, 2, 1),
            (n, 2),
        ]


def test_enumerate_small_caps():
    assert enumerate_tail_sequences(6, 0) == [(6, 0)]
    assert len(enumerate_tail_sequences(6, 1)) == 3
    with pytest.raises(ValueError):
        enumerate_tail_sequences(3, 4)


def test_round_trip_all_sequences_up_to_8():
    for n in range(1, 9):
        for seq in enumerate_tail_sequences(n, n):
            m = realize_rank_sequence(seq)
            assert rank_sequence(m).terms == seq


def test_random_sequences_are_valid_and_stabilize():
    rng = default_rng(55)
    for _ in range(150):
        n = int(rng.integers(1, 7))
        m = Matrix.exact(
            [[int(rng.integers(-2, 3)) for _ in range(n)] for _ in range(n)]
        )
        seq = rank_sequence(m)
        assert is_valid_rank_sequence(list(seq.terms))
        assert len(seq.terms) <= n + 1
        assert seq.terms[-1] == seq.limit


@given(st.lists(st.integers(min_value=0, max_value=8), min_size=1, max_size=6))
@settings(max_examples=200)
def test_realize_round_trip_property(seq):
    if not is_valid_rank_sequence(seq):
        with pytest.raises(ValueError):
            realize_rank_sequence(seq)
        return
    m = realize_rank_sequence(seq)
    assert rank_sequence(m).terms == stabilize(seq)


def test_float_backend_matches_exact(hermitian_normal_pair_4x4):
    a, b = hermitian_normal_pair_4x4
    ab = (a @ b).to_float()
    assert rank_sequence(ab).terms == (4, 2, 0)


def test_clamping_flags_rank_increase():
    terms, clamped = _clamped_terms([4, 2, 3, 1])
    assert terms == [4, 2, 2, 1] and clamped
    terms, clamped = _clamped_terms([4, 2, 0])
    assert terms == [4, 2, 0] and not clamped


def test_no_spurious_warnings_on_clean_float_input():
    with warnings.catch_warnings():
        warnings.simplefilter("error", ToleranceWarning)
        rank_sequence(Matrix.identity(4, "float"))


def test_serialization():
    seq = RankSequence.from_terms((4, 2, 2, 1))
    assert seq.terms == (4, 2)  # stabilized at the first repeat
    assert seq.to_json() == {"n": 4, "terms": [4, 2], "limit": 2}
    assert seq.expand(5) == (4, 2, 2, 2, 2)
