"""Structural predicates (Hermitian, normal, PSD, EP) with witnesses.

The EP test is rank([m | m*]) = rank(m), which works on both backends.
The exact PSD test reads signs of principal-minor sums off the
characteristic polynomial instead of computing (generally irrational)
eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BackendError, HypothesisViolation, ShapeError
from .linalg import (
    invertible,
    principal_minor_sums,
    rank,
    rank_of_concatenation,
    solve_linear,
)
from .matrix import EXACT, FLOAT, Matrix
from .scalars import DEFAULT_TOLERANCE, GQ, TolerancePolicy

_HALF = Fraction(1, 2)


def hermitian_real_part(m: Matrix) -> Matrix:
    """(m + m*) / 2."""
    return (m + m.adjoint()) * _HALF


def is_hermitian(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    if not m.is_square:
        raise ShapeError("predicate requires a square matrix")
    d = m - m.adjoint()
    if m.backend == EXACT:
        return d.is_zero()
    return d.frobenius() <= tol.residual_tol * m.frobenius()


def is_normal(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    if not m.is_square:
        raise ShapeError("predicate requires a square matrix")
    d = m @ m.adjoint() - m.adjoint() @ m
    if m.backend == EXACT:
        return d.is_zero()
    scale = m.frobenius() ** 2
    return d.frobenius() <= tol.residual_tol * scale


def is_psd(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    if not is_hermitian(m, tol):
        return False
    if m.backend == EXACT:
        sums = principal_minor_sums(m)
        return all(e.im == 0 and e.re >= 0 for e in sums)
    h = hermitian_real_part(m)
    eigs = np.linalg.eigvalsh(h.array)
    return bool(eigs.size == 0 or eigs[0] >= -tol.residual_tol * m.frobenius())


def is_ep(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """range(m) = range(m*), tested as rank([m | m*]) = rank(m)."""
    if not m.is_square:
        raise ShapeError("predicate requires a square matrix")
    return rank_of_concatenation(m, m.adjoint(), tol) == rank(m, tol)


def realpart_psd_same_rank(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """(m + m*)/2 is PSD and has the same rank as m."""
    h = hermitian_real_part(m)
    return is_psd(h, tol) and rank(h, tol) == rank(m, tol)


@dataclass(frozen=True)
class ClassReport:
    hermitian: bool
    normal: bool
    psd: bool
    ep: bool
    realpart_psd_same_rank: bool
    rank: int
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "hermitian": self.hermitian,
            "normal": self.normal,
            "psd": self.psd,
            "ep": self.ep,
            "realpart_psd_same_rank": self.realpart_psd_same_rank,
            "rank": self.rank,
            "witnesses": self.witnesses,
        }


def _normality_witness(m: Matrix) -> dict:
    """A vector v with ||m v|| != ||m* v||, encoded entrywise as strings."""
    d = m.adjoint() @ m - m @ m.adjoint()  # v* d v = ||m v||^2 - ||m* v||^2
    n = m.rows
    best_v = None
    best_gap = None
    best_size = 0.0

    def consider(v: Matrix):
        nonlocal best_v, best_gap, best_size
        gap = (v.adjoint() @ d @ v)[0, 0]
        size = abs(complex(gap))
        if best_v is None or size > best_size:
            best_v, best_gap, best_size = v, gap, size

    def basis_vector(j, extra=None):
        e = Matrix.zeros(n, 1, m.backend).array.copy()
        e[j, 0] = GQ(1) if m.backend == EXACT else 1.0
        if extra is not None:
            k, w = extra
            e[k, 0] = w
        return Matrix(e, m.backend)

    for j in range(n):
        consider(basis_vector(j))
    for j in range(n):
        for k in range(j + 1, n):
            w = d[j, k]
            if (m.backend == EXACT and not w) or (m.backend == FLOAT and w == 0):
                continue
            consider(basis_vector(j, extra=(k, w.conjugate())))
    if best_v is None or best_size == 0:
        return {}
    return {
        "vector": [str(best_v[i, 0]) for i in range(best_v.rows)],
        "norm_gap_sq": str(best_gap),
    }


def classify(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ClassReport:
    """Evaluate every predicate and attach witnesses for the failures."""
    herm = is_hermitian(m, tol)
    norm = is_normal(m, tol)
    psd = is_psd(m, tol)
    ep = is_ep(m, tol)
    rp = realpart_psd_same_rank(m, tol)
    r = rank(m, tol)
    witnesses: dict = {}
    if not herm:
        for i in range(m.rows):
            for j in range(m.cols):
                if m[i, j] != m[j, i].conjugate():
                    witnesses["hermitian_violation"] = [i, j]
                    break
            if "hermitian_violation" in witnesses:
                break
    if not norm:
        w = _normality_witness(m)
        if w:
            witnesses["normality_violation"] = w
    if herm and not psd:
        if m.backend == EXACT:
            sums = principal_minor_sums(m)
            k = next(i for i, e in enumerate(sums) if e.im != 0 or e.re < 0)
            witnesses["negative_minor_sum_order"] = k
        else:
            h = hermitian_real_part(m)
            witnesses["min_eigenvalue"] = float(np.linalg.eigvalsh(h.array)[0])
    if not ep:
        witnesses["range_adjoint_rank"] = rank_of_concatenation(m, m.adjoint(), tol)
    return ClassReport(
        hermitian=herm, normal=norm, psd=psd, ep=ep,
        realpart_psd_same_rank=rp, rank=r, witnesses=witnesses,
    )


@dataclass(frozen=True)
class EPDecomposition:
    """Unitary v with v* m v = c + 0 (direct sum), c invertible of size r."""

    v: Matrix
    c: Matrix
    r: int
    residual: float

    def reconstruct(self) -> Matrix:
        n = self.v.rows
        backend = self.v.backend
        padded = Matrix.zeros(n, n, backend).array.copy()
        padded[: self.r, : self.r] = self.c.array
        return self.v @ Matrix(padded, backend) @ self.v.adjoint()


def ep_decomposition(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> EPDecomposition:
    """Align range(m): returns V unitary whose first rank(m) columns span it.

    Exact backend accepts only inputs already in block form (leading
    invertible block, zero elsewhere), since unitary alignment needs
    square roots.
    """
    if not m.is_square:
        raise ShapeError("decomposition requires a square matrix")
    if not is_ep(m, tol):
        raise HypothesisViolation("matrix is not EP (range differs from adjoint range)")
    n = m.rows
    r = rank(m, tol)
    if m.backend == EXACT:
        lead = m.block(0, r, 0, r)
        aligned = (
            m.block(0, r, r, n).is_zero()
            and m.block(r, n, 0, n).is_zero()
            and rank(lead) == r
        )
        if not aligned:
            raise BackendError(
                "exact decomposition requires the matrix already in invertible-block-plus-zero form"
            )
        return EPDecomposition(v=Matrix.identity(n), c=lead, r=r, residual=0.0)
    u, _, _ = np.linalg.svd(m.array)
    v = Matrix.from_float(u)
    conj = v.adjoint() @ m @ v
    c = conj.block(0, r, 0, r)
    trailing = float(
        np.linalg.norm(conj.array[r:, :]) ** 2 + np.linalg.norm(conj.array[:r, r:]) ** 2
    ) ** 0.5
    residual = trailing / max(m.frobenius(), 1e-300)
    if residual > tol.residual_tol:
        raise HypothesisViolation("range alignment left nonzero trailing blocks")
    if not invertible(c, tol):
        raise HypothesisViolation("leading block is numerically singular")
    return EPDecomposition(v=v, c=c, r=r, residual=residual)


@dataclass(frozen=True)
class ColumnInclusionFactor:
    """x with A11 x = A12 for the split a = [[A11, A12], [A21, A22]]."""

    x: Matrix
    residual: float


def column_inclusion_factor(
    a: Matrix, r: int, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> ColumnInclusionFactor | None:
    """Solve A11 X = A12 at split index r; None when range(A12) is not
    contained in range(A11)."""
    if not a.is_square:
        raise ShapeError("column inclusion requires a square matrix")
    n = a.rows
    if not 0 <= r <= n:
        raise ValueError(f"split index {r} out of range 0..{n}")
    a11 = a.block(0, r, 0, r)
    a12 = a.block(0, r, r, n)
    x = solve_linear(a11, a12, tol)
    if x is None:
        return None
    if a.backend == EXACT:
        return ColumnInclusionFactor(x=x, residual=0.0)
    res = (a11 @ x - a12).frobenius() / max(a12.frobenius(), 1e-300)
    return ColumnInclusionFactor(x=x, residual=res)
