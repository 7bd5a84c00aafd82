import numpy as np
import pytest

from abba import (
    BackendError,
    HypothesisViolation,
    Matrix,
    classify,
    column_inclusion_factor,
    ep_decomposition,
    hermitian_real_part,
    is_ep,
    is_hermitian,
    is_normal,
    is_psd,
    rank,
    realpart_psd_same_rank,
)
from abba.generators import (
    default_rng,
    random_ep,
    random_normal,
    random_psd,
    random_unitary,
    rational_hermitian,
    rational_normal,
    rational_psd,
)

from .oracle import oracle_eigenvalues, to_sympy

J2 = Matrix.exact([[0, 1], [0, 0]])


def test_hermitian_examples(hermitian_pair_3x3, hermitian_normal_pair_4x4):
    assert is_hermitian(hermitian_pair_3x3[0])
    assert is_hermitian(hermitian_normal_pair_4x4[0])
    assert not is_hermitian(J2)


def test_hermitian_float_tolerance():
    m = Matrix.from_float([[1.0, 1e-14], [0.0, 1.0]])
    assert is_hermitian(m)
    assert not is_hermitian(Matrix.from_float([[1.0, 1e-3], [0.0, 1.0]]))


def test_normal_examples(hermitian_normal_pair_4x4):
    assert is_normal(hermitian_normal_pair_4x4[1])
    rng = default_rng(2)
    assert is_normal(random_unitary(4, rng))
    assert not is_normal(J2)


def test_psd_examples(hermitian_normal_pair_4x4):
    assert is_psd(Matrix.exact([[1, 1], [1, 1]]))
    assert not is_psd(Matrix.exact([[0, 1], [1, 0]]))
    # Hermitian with a negative eigenvalue: confirmed by the oracle
    a = hermitian_normal_pair_4x4[0]
    assert not is_psd(a)
    eigs = oracle_eigenvalues(a)
    assert min(eigs) < 0


def test_psd_exact_matches_sympy_oracle():
    rng = default_rng(23)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        h = rational_hermitian(n, rng)
        assert is_psd(h) == bool(to_sympy(h).is_positive_semidefinite)


def test_psd_float():
    rng = default_rng(31)
    p = random_psd(5, rng, rank=3)
    assert is_psd(p)
    assert not is_psd(Matrix.from_float(np.diag([1.0, -1e-3])))


def test_ep_examples(hermitian_normal_pair_4x4):
    b = hermitian_normal_pair_4x4[1]
    assert is_ep(b) and rank(b) == 3
    assert not is_ep(J2)
    assert is_ep(Matrix.exact([[2, 1], [1, 1]]))  # invertible


def test_realpart_psd_same_rank():
    assert realpart_psd_same_rank(Matrix.exact([[1, 1], [1, 1]]))  # PSD itself
    assert not realpart_psd_same_rank(Matrix.exact([[1j]]))
    assert realpart_psd_same_rank(Matrix.exact([[1, 1], [-1, 1]]))  # real part I


def test_predicate_implication_chain():
    rng = default_rng(17)
    pool = []
    for _ in range(12):
        n = int(rng.integers(1, 6))
        pool.append(rational_hermitian(n, rng))
        pool.append(rational_normal(n, rng))
        pool.append(rational_psd(n, rng))
        pool.append(random_normal(n, rng))
        pool.append(random_psd(n, rng))
    for m in pool:
        rep = classify(m)
        if rep.psd:
            assert rep.hermitian
        if rep.hermitian:
            assert rep.normal
        if rep.normal:
            assert rep.ep


def test_normal_implies_ep_500():
    rng = default_rng(19)
    for _ in range(500):
        n = int(rng.integers(1, 7))
        assert is_ep(random_normal(n, rng))


def test_classify_witnesses():
    rep = classify(J2)
    assert rep.to_json()["rank"] == 1
    assert rep.witnesses["hermitian_violation"] == [0, 1]
    assert "normality_violation" in rep.witnesses
    assert rep.witnesses["range_adjoint_rank"] == 2
    neg = classify(Matrix.exact([[0, 1], [1, 0]]))
    assert neg.witnesses["negative_minor_sum_order"] == 2


def test_normality_witness_detects_gap():
    rep = classify(J2.to_float())
    w = rep.witnesses["normality_violation"]
    assert len(w["vector"]) == 2


def test_ep_decomposition_aligned_exact():
    m = Matrix.exact([[5, 1, 0], [2, 3, 0], [0, 0, 0]])
    dec = ep_decomposition(m)
    assert dec.v == Matrix.identity(3)
    assert dec.r == 2 and dec.residual == 0.0
    assert dec.c == Matrix.exact([[5, 1], [2, 3]])


def test_ep_decomposition_exact_requires_alignment():
    with pytest.raises(BackendError):
        ep_decomposition(Matrix.diagonal([0, 5]))


def test_ep_decomposition_float_permutation():
    dec = ep_decomposition(Matrix.from_float(np.diag([0.0, 5.0])))
    assert dec.r == 1
    assert abs(dec.c[0, 0] - 5.0) < 1e-12
    # v swaps the coordinates up to phase
    assert abs(abs(dec.v[1, 0]) - 1.0) < 1e-12


def test_ep_decomposition_of_4x4_normal(hermitian_normal_pair_4x4):
    b = hermitian_normal_pair_4x4[1].to_float()
    dec = ep_decomposition(b)
    assert dec.r == 3 and dec.residual <= 1e-10
    assert (dec.reconstruct() - b).frobenius() <= 1e-10 * b.frobenius()


def test_ep_decomposition_round_trip_random():
    rng = default_rng(61)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        m = random_ep(n, rng)
        dec = ep_decomposition(m)
        assert (dec.reconstruct() - m).frobenius() <= 1e-9 * max(1.0, m.frobenius())


def test_ep_decomposition_rejects_non_ep():
    with pytest.raises(HypothesisViolation):
        ep_decomposition(J2.to_float())


def test_column_inclusion_examples():
    f = column_inclusion_factor(Matrix.exact([[1, 1], [1, 1]]), 1)
    assert f.x == Matrix.exact([[1]]) and f.residual == 0.0
    # PSD with zero leading block forces a zero off-diagonal block
    p = Matrix.exact([[0, 0], [0, 3]])
    f0 = column_inclusion_factor(p, 1)
    assert f0 is not None and f0.x.is_zero()
    assert column_inclusion_factor(Matrix.exact([[0, 1], [1, 0]]), 1) is None
    with pytest.raises(ValueError):
        column_inclusion_factor(Matrix.identity(2), 5)


def test_psd_always_has_column_inclusion():
    rng = default_rng(67)
    for _ in range(500):
        n = int(rng.integers(1, 7))
        p = random_psd(n, rng)
        for split in range(n + 1):
            f = column_inclusion_factor(p, split)
            assert f is not None and f.residual <= 1e-8


def test_hermitian_real_part():
    m = Matrix.exact([[(0, 2), 4], [0, 6]])
    h = hermitian_real_part(m)
    assert is_hermitian(h)
    assert h == Matrix.exact([[0, 2], [2, 6]])
