"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Exact-backend assertions use zero tolerance; float assertions use
the stated bounds (residual 1e-10, condition 1e8).
"""

import numpy as np

from abba import (
    COMMUTING,
    DEGREE_SIX_PROBE,
    Matrix,
    SearchSpec,
    catalog,
    construct_similarity_psd_ep,
    decide_product_similarity,
    decide_unitary_2x2,
    doubling_product_similarity,
    enumerate_tail_sequences,
    find_intertwiner,
    is_normal,
    is_valid_rank_sequence,
    minimal_counterexample_analysis,
    normal_doubling,
    nullspace_basis,
    rank,
    rank_one_normal_unitary,
    rank_sequence,
    realize_rank_sequence,
    search_counterexample,
    trace_word,
    verify_certificate,
    word_trace_screen,
)
from abba import generators as gen
from abba.scalars import GQ

RESIDUAL_BOUND = 1e-10
CONDITION_BOUND = 1e8


def _ok(label):
    print(f"PASS: {label}", flush=True)


def test_minimal_4x4_fixture_exact(hermitian_normal_pair_4x4):
    a, b = hermitian_normal_pair_4x4
    ab, ba = a @ b, b @ a
    assert rank_sequence(ab).terms == (4, 2, 0)
    assert rank_sequence(ba).terms == (4, 2, 1, 0)
    assert not decide_product_similarity(a, b).similar
    assert (ab @ ab).is_zero()
    assert not (ba @ ba).is_zero()
    _ok("4x4 Hermitian/normal fixture: sequences, verdict, exact square tests")


def test_smallest_2x2_fixture(nilpotent_pair):
    v = decide_product_similarity(*nilpotent_pair)
    assert not v.similar
    assert v.seq_ab.terms == (2, 1, 0) and v.seq_ba.terms == (2, 0)
    _ok("2x2 fixture: not similar with sequences (2,1,0) vs (2,0)")


def test_hermitian_3x3_word_and_intertwiner(hermitian_pair_3x3):
    a, b = hermitian_pair_3x3
    ab, ba = a @ b, b @ a
    assert word_trace_screen(ab, ba, 6).distinguished
    t1 = trace_word(ab, DEGREE_SIX_PROBE)
    t2 = trace_word(ba, DEGREE_SIX_PROBE)
    assert t1 != t2 and t1 == GQ(6) and t2 == GQ(10)
    assert decide_product_similarity(a, b).similar
    cert = find_intertwiner(ab, ba, seed=0)
    assert cert is not None and cert.residual == 0.0 and cert.det
    assert verify_certificate(cert, ab, ba).ok
    _ok("3x3 Hermitian fixture: word separates, products similar with exact certificate")


def test_transpose_fixture(transpose_matrix):
    a = transpose_matrix
    at = a.transpose()
    cert = find_intertwiner(a, at, seed=0)
    assert cert is not None and cert.residual == 0.0
    assert word_trace_screen(a, at, 6).distinguished
    _ok("transpose fixture: similar to transpose yet distinguished by a word trace")


def test_psd_normal_construction_suite():
    rng = gen.default_rng(2024)
    for _ in range(100):
        n = int(rng.integers(3, 9))
        a = gen.random_psd(n, rng)
        b = gen.random_normal(n, rng)
        cert = construct_similarity_psd_ep(a, b)
        assert cert.residual <= RESIDUAL_BOUND
        assert cert.condition <= CONDITION_BOUND
        assert verify_certificate(cert, a @ b, b @ a).ok
        assert decide_product_similarity(a, b).similar
    _ok("100/100 PSD x normal constructions within residual and condition bounds")


def test_realpart_psd_ep_construction_suite():
    rng = gen.default_rng(2025)
    for _ in range(100):
        n = int(rng.integers(3, 9))
        a = gen.random_realpart_psd(n, rng)
        b = gen.random_ep(n, rng)
        cert = construct_similarity_psd_ep(a, b)
        assert cert.residual <= RESIDUAL_BOUND
        assert cert.condition <= CONDITION_BOUND
        assert verify_certificate(cert, a @ b, b @ a).ok
        assert decide_product_similarity(a, b).similar
    _ok("100/100 PSD-real-part x EP constructions within residual and condition bounds")


def test_normal_pairs_rank_equality_suite():
    rng = gen.default_rng(311)
    for trial in range(250):
        n = int(rng.integers(2, 7))
        a = gen.rational_normal(n, rng)
        b = gen.rational_normal(n, rng)
        assert rank(a @ b) == rank(b @ a)
    for trial in range(250):
        n = int(rng.integers(2, 7))
        a = gen.random_normal(n, rng)
        b = gen.random_normal(n, rng)
        assert rank(a @ b) == rank(b @ a)
    _ok("500/500 normal pairs satisfy rank(AB) = rank(BA) (exact and float)")


def test_hermitian_pairs_similarity_suite():
    rng = gen.default_rng(313)
    for trial in range(250):
        n = int(rng.integers(2, 7))
        v = decide_product_similarity(
            gen.rational_hermitian(n, rng), gen.rational_hermitian(n, rng)
        )
        assert v.similar and v.seq_ab.limit == v.seq_ba.limit
    for trial in range(250):
        n = int(rng.integers(2, 7))
        v = decide_product_similarity(
            gen.random_hermitian(n, rng), gen.random_hermitian(n, rng)
        )
        assert v.similar and v.seq_ab.limit == v.seq_ba.limit
    _ok("500/500 Hermitian pairs produce similar products")


def test_low_rank_normal_suite():
    rng = gen.default_rng(317)
    n = 5
    for trial in range(250):
        ra = int(rng.integers(0, 3))
        v = decide_product_similarity(
            gen.rational_normal(n, rng, rank=ra), gen.rational_normal(n, rng)
        )
        assert v.similar
    for trial in range(250):
        ra = int(rng.integers(0, 3))
        v = decide_product_similarity(
            gen.random_normal(n, rng, rank=ra), gen.random_normal(n, rng)
        )
        assert v.similar
    findings = search_counterexample(SearchSpec(family="normal", size=5, rank=2, trials=500, seed=41))
    assert findings == []
    _ok("500/500 rank<=2 normal pairs similar; 500-trial search finds nothing")


def test_3x3_normal_suite():
    rng = gen.default_rng(331)
    for trial in range(250):
        v = decide_product_similarity(
            gen.rational_normal(3, rng), gen.rational_normal(3, rng)
        )
        assert v.similar
    for trial in range(250):
        v = decide_product_similarity(
            gen.random_normal(3, rng), gen.random_normal(3, rng)
        )
        assert v.similar
    findings = search_counterexample(SearchSpec(family="normal", size=3, trials=500, seed=43))
    assert findings == []
    _ok("500/500 3x3 normal pairs similar; 500-trial search finds nothing")


def test_minimal_counterexample_patterns():
    assert minimal_counterexample_analysis() == ((4, 2, 0), (4, 2, 1, 0))
    _ok("minimal counterexample analysis isolates (4,2,0) and (4,2,1,0)")


def test_doubling_suite():
    rng = gen.default_rng(337)
    for trial in range(100):
        n = int(rng.integers(1, 5))
        x = Matrix.from_float(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        y = Matrix.from_float(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        assert is_normal(normal_doubling(x))
        assert is_normal(normal_doubling(y))
        cert = doubling_product_similarity(x, y, seed=trial)
        assert cert.residual <= RESIDUAL_BOUND
    _ok("100/100 doubled pairs: doubles normal, similarity certificates within 1e-10")


def test_two_by_two_normal_unitary_suite():
    rng = gen.default_rng(347)
    for trial in range(200):
        a = gen.random_normal(2, rng)
        b = gen.random_normal(2, rng)
        assert decide_unitary_2x2(a @ b, b @ a)
    _ok("200/200 2x2 normal pairs pass the complete-invariant test on (AB, BA)")


def test_rank_one_normal_unitary_suite():
    rng = gen.default_rng(349)
    commuting_seen = 0
    unitary_seen = 0
    for trial in range(200):
        n = int(rng.integers(2, 7))
        if trial % 8 == 0:
            # force the kernel branch: a projects onto a null vector of b
            b = gen.random_normal(n, rng, rank=int(rng.integers(0, n)))
            null = nullspace_basis(b)
            v = null[0].array
            a = Matrix.from_float(v @ v.conj().T)
        else:
            a = gen.random_rank_one_normal(n, rng)
            b = gen.random_normal(n, rng)
        res = rank_one_normal_unitary(a, b)
        if res is COMMUTING:
            commuting_seen += 1
            assert (a @ b).frobenius() <= RESIDUAL_BOUND * 10
            assert (b @ a).frobenius() <= RESIDUAL_BOUND * 10
        else:
            unitary_seen += 1
            scale = max(1.0, a.frobenius() * b.frobenius())
            assert ((b @ a) @ res - res @ (a @ b)).frobenius() <= RESIDUAL_BOUND * scale
            assert np.allclose(res.array.conj().T @ res.array, np.eye(n), atol=1e-10)
    assert commuting_seen > 0 and unitary_seen > 0
    _ok(
        f"200/200 rank-one witnesses within 1e-10 "
        f"({commuting_seen} commuting, {unitary_seen} unitary)"
    )


def test_rank_sequence_property_suite():
    rng = gen.default_rng(353)
    for trial in range(1000):
        n = int(rng.integers(1, 7))
        m = Matrix.exact(
            [[int(rng.integers(-2, 3)) for _ in range(n)] for _ in range(n)]
        )
        seq = rank_sequence(m)
        assert is_valid_rank_sequence(list(seq.terms))
        assert len(seq.terms) <= n + 1
    for n in range(1, 9):
        for pattern in enumerate_tail_sequences(n, n):
            assert rank_sequence(realize_rank_sequence(pattern)).terms == pattern
    _ok("1000 random rank sequences valid; realize/rank_sequence round trip for n <= 8")


def test_backend_agreement_on_fixtures():
    for fixture in catalog():
        exact_results = fixture.evaluate("exact")
        float_results = fixture.evaluate("float")
        assert exact_results == float_results
        assert all(ok for _, ok in exact_results)
    pairs = ["nilpotent-2x2", "hermitian-products-3x3", "hermitian-normal-4x4"]
    for fixture in catalog():
        if fixture.name not in pairs:
            continue
        a, b = fixture.matrices["a"], fixture.matrices["b"]
        exact_v = decide_product_similarity(a, b)
        float_v = decide_product_similarity(a.to_float(), b.to_float())
        assert exact_v.similar == float_v.similar
        assert exact_v.seq_ab.terms == float_v.seq_ab.terms
        assert exact_v.seq_ba.terms == float_v.seq_ba.terms
    _ok("float-backend verdicts match exact-backend verdicts on all rational fixtures")
