"""Decide similarity of AB vs BA and build explicit invertible intertwiners.

Non-similarity is concluded only from unequal rank sequences, which is
sound and complete for product pairs.  Constructions:

* Sylvester null-space sampling: the intertwiner space {S : S M1 = M2 S}
  is the kernel of an n^2 x n^2 linear map; random combinations of a
  kernel basis are invertible generically whenever any invertible
  intertwiner exists.
* The positive-semidefinite / EP transform: after aligning the range of
  b, solve the column-inclusion systems and assemble the explicit block
  matrix [[C + X Y*, -X], [-Y*, I]]; for Hermitian a the two solves
  coincide (Y = X).
* The doubling map x -> [[x, x*], [x*, x]], always normal, whose products
  become block-diagonal Hermitian products after a rational conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classes import ep_decomposition, is_ep, is_hermitian, is_psd, realpart_psd_same_rank
from .errors import BackendError, HypothesisViolation, IntertwinerNotFound, ShapeError
from .linalg import condition_estimate, determinant, nullspace_basis, rank, solve_linear
from .matrix import EXACT, Matrix, block, kron
from .rankseq import RankSequence, rank_sequence
from .scalars import DEFAULT_TOLERANCE, GQ, TolerancePolicy


@dataclass(frozen=True)
class SimilarityVerdict:
    similar: bool
    reason: str  # rank-sequence-equal | rank-sequence-differ | full-rank-shortcut
    seq_ab: RankSequence
    seq_ba: RankSequence

    def to_json(self) -> dict:
        return {
            "similar": self.similar,
            "reason": self.reason,
            "seq_ab": self.seq_ab.to_json(),
            "seq_ba": self.seq_ba.to_json(),
        }


@dataclass(frozen=True)
class SimilarityCertificate:
    """Invertible t with t M1 = M2 t, plus residual and invertibility evidence."""

    t: Matrix
    residual: float
    det: GQ | None = None          # exact backend evidence
    condition: float | None = None  # float backend evidence

    def to_json(self) -> dict:
        from .matio import dump_matrix

        return {
            "t": dump_matrix(self.t),
            "residual": self.residual,
            "det_or_cond": str(self.det) if self.det is not None else self.condition,
        }


@dataclass(frozen=True)
class CertificateCheck:
    residual: float
    invertible: bool
    ok: bool
    det: GQ | None = None
    condition: float | None = None

    def to_json(self) -> dict:
        return {
            "residual": self.residual,
            "invertible": self.invertible,
            "ok": self.ok,
            "det_or_cond": str(self.det) if self.det is not None else self.condition,
        }


def _relative_residual(t: Matrix, m1: Matrix, m2: Matrix) -> float:
    diff = t @ m1 - m2 @ t
    if diff.is_zero():
        return 0.0
    denom = t.frobenius() * max(m1.frobenius(), m2.frobenius())
    if denom == 0:
        return float("inf")
    return diff.frobenius() / denom


def certificate_for(
    t: Matrix, m1: Matrix, m2: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> SimilarityCertificate:
    """Package t as a certificate for t M1 = M2 t, computing the evidence."""
    residual = _relative_residual(t, m1, m2)
    if t.backend == EXACT:
        return SimilarityCertificate(t=t, residual=residual, det=determinant(t))
    return SimilarityCertificate(t=t, residual=residual, condition=condition_estimate(t))


def certificate_valid(
    cert: SimilarityCertificate, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> bool:
    if cert.t.backend == EXACT:
        return cert.residual == 0.0 and cert.det is not None and bool(cert.det)
    return (
        cert.residual <= tol.residual_tol
        and cert.condition is not None
        and cert.condition <= tol.max_condition
    )


def verify_certificate(
    cert: SimilarityCertificate, m1: Matrix, m2: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> CertificateCheck:
    """Recompute residual and invertibility evidence from scratch."""
    t = cert.t
    residual = _relative_residual(t, m1, m2)
    if t.backend == EXACT:
        det = determinant(t)
        inv = bool(det)
        return CertificateCheck(residual=residual, invertible=inv, det=det,
                                ok=inv and residual == 0.0)
    cond = condition_estimate(t)
    inv = cond <= tol.max_condition
    return CertificateCheck(residual=residual, invertible=inv, condition=cond,
                            ok=inv and residual <= tol.residual_tol)


def decide_product_similarity(
    a: Matrix, b: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> SimilarityVerdict:
    """AB is similar to BA iff their rank sequences agree."""
    if not (a.is_square and b.is_square and a.rows == b.rows):
        raise ShapeError("operands must be square and of equal size")
    if a.backend != b.backend:
        raise BackendError("operands must share a backend")
    ab = a @ b
    ba = b @ a
    seq_ab = rank_sequence(ab, tol)
    seq_ba = rank_sequence(ba, tol)
    similar = seq_ab.terms == seq_ba.terms
    reason = "rank-sequence-equal" if similar else "rank-sequence-differ"
    if similar:
        rank_a = rank(a, tol)
        if seq_ab.expand(2)[1] == rank_a and seq_ba.expand(2)[1] == rank_a:
            reason = "full-rank-shortcut"
    return SimilarityVerdict(similar=similar, reason=reason, seq_ab=seq_ab, seq_ba=seq_ba)


def intertwiner_space(m1: Matrix, m2: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list[Matrix]:
    """Basis of {s : s m1 = m2 s}, via the kernel of m1^T (x) I - I (x) m2."""
    n = m1.rows
    eye = Matrix.identity(n, m1.backend)
    sylvester = kron(m1.transpose(), eye) - kron(eye, m2)
    vectors = nullspace_basis(sylvester, tol)
    out = []
    for vec in vectors:
        arr = vec.array.reshape((n, n), order="F").copy()
        out.append(Matrix(arr, m1.backend))
    return out


def find_intertwiner(
    m1: Matrix,
    m2: Matrix,
    seed: int = 0,
    attempts: int = 32,
    tol: TolerancePolicy = DEFAULT_TOLERANCE,
) -> SimilarityCertificate | None:
    """Sample the intertwiner space for an invertible element.

    Returns the first invertible sample as a certificate, or None when
    the space is trivial or the budget runs out.  None is advisory only:
    it never proves non-similarity.
    """
    if not (m1.is_square and m2.is_square and m1.rows == m2.rows):
        raise ShapeError("operands must be square and of equal size")
    if m1.backend != m2.backend:
        raise BackendError("operands must share a backend")
    basis = intertwiner_space(m1, m2, tol)
    if not basis:
        return None
    n = m1.rows
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        if m1.backend == EXACT:
            coeffs = [GQ(int(c)) for c in rng.integers(-9, 10, size=len(basis))]
        else:
            coeffs = list(rng.standard_normal(len(basis)))
        t = Matrix.zeros(n, n, m1.backend)
        for c, s in zip(coeffs, basis):
            t = t + s * c
        if t.is_zero():
            continue
        cert = certificate_for(t, m1, m2, tol)
        if certificate_valid(cert, tol):
            return cert
    return None


def construct_similarity_psd_ep(
    a: Matrix, b: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> SimilarityCertificate:
    """Explicit T with T(ab) = (ba)T when a is PSD (or has a PSD real part
    of full comparative rank) and b is EP.

    Aligns range(b) by a unitary V, solves the column-inclusion systems
    A11 X = A12 and A11* Y = A21* in the aligned frame, and conjugates
    S = [[C + X Y*, -X], [-Y*, I]] back.  Hermitian a gives Y = X and
    reduces S to its classical positive-semidefinite form.
    """
    if not (a.is_square and b.is_square and a.rows == b.rows):
        raise ShapeError("operands must be square and of equal size")
    if a.backend != b.backend:
        raise BackendError("operands must share a backend")
    hermitian_a = is_hermitian(a, tol)
    if not (is_psd(a, tol) or realpart_psd_same_rank(a, tol)):
        raise HypothesisViolation(
            "a must be positive semidefinite or have a PSD real part of equal rank"
        )
    if not is_ep(b, tol):
        raise HypothesisViolation("b must be EP (range equal to adjoint range)")
    dec = ep_decomposition(b, tol)
    v, c, r = dec.v, dec.c, dec.r
    n = a.rows
    at = v.adjoint() @ a @ v
    a11 = at.block(0, r, 0, r)
    a12 = at.block(0, r, r, n)
    a21 = at.block(r, n, 0, r)
    x = solve_linear(a11, a12, tol)
    if x is None:
        raise HypothesisViolation("column inclusion solve failed for a")
    if hermitian_a:
        y = x
    else:
        y = solve_linear(a11.adjoint(), a21.adjoint(), tol)
        if y is None:
            raise HypothesisViolation("row inclusion solve failed for a")
    eye = Matrix.identity(n - r, a.backend)
    s = block([[c + x @ y.adjoint(), -x], [-y.adjoint(), eye]])
    t = v @ s @ v.adjoint()
    cert = certificate_for(t, a @ b, b @ a, tol)
    if not certificate_valid(cert, tol):
        raise HypothesisViolation(
            f"constructed transform failed verification (residual {cert.residual:.3g})"
        )
    return cert


def hermitian_parts(x: Matrix) -> tuple[Matrix, Matrix]:
    """(h, k) Hermitian with x = h + i k."""
    if not x.is_square:
        raise ShapeError("hermitian parts of a non-square matrix")
    adj = x.adjoint()
    h = (x + adj) * Fraction(1, 2)
    if x.backend == EXACT:
        k = (x - adj) * GQ(0, Fraction(-1, 2))
    else:
        k = (x - adj) * complex(0, -0.5)
    return h, k


def normal_doubling(x: Matrix) -> Matrix:
    """[[x, x*], [x*, x]]; always a normal matrix."""
    if not x.is_square:
        raise ShapeError("doubling requires a square matrix")
    adj = x.adjoint()
    return block([[x, adj], [adj, x]])


def doubling_conjugator(n: int, backend: str = EXACT) -> Matrix:
    """[[I, I], [-I, I]]: a rational multiple of a unitary; conjugation by it
    block-diagonalizes every doubled matrix."""
    eye = Matrix.identity(n, backend)
    return block([[eye, eye], [-eye, eye]])


def doubling_product_similarity(
    x: Matrix,
    y: Matrix,
    seed: int = 0,
    attempts: int = 32,
    tol: TolerancePolicy = DEFAULT_TOLERANCE,
) -> SimilarityCertificate:
    """Certificate that the doubled products of x and y are similar both ways.

    Conjugating by [[I, I], [-I, I]] turns each doubled product into a
    direct sum of products of Hermitian matrices, which intertwine by
    the Sylvester sampling; the scalar 1/sqrt(2) of the unitary version
    cancels, so the exact backend stays rational.
    """
    if x.shape != y.shape or not x.is_square:
        raise ShapeError("operands must be square and of equal size")
    if x.backend != y.backend:
        raise BackendError("operands must share a backend")
    n = x.rows
    x1, x2 = hermitian_parts(x)
    y1, y2 = hermitian_parts(y)
    c1 = find_intertwiner(x1 @ y1, y1 @ x1, seed=seed, attempts=attempts, tol=tol)
    c2 = find_intertwiner(x2 @ y2, y2 @ x2, seed=seed + 1, attempts=attempts, tol=tol)
    if c1 is None or c2 is None:
        raise IntertwinerNotFound("intertwiner sampling budget exhausted for a diagonal block")
    zero = Matrix.zeros(n, n, x.backend)
    t_blocks = block([[c1.t, zero], [zero, c2.t]])
    w = doubling_conjugator(n, x.backend)
    w_inv = block(
        [[Matrix.identity(n, x.backend), -Matrix.identity(n, x.backend)],
         [Matrix.identity(n, x.backend), Matrix.identity(n, x.backend)]]
    ) * Fraction(1, 2)
    t = w_inv @ t_blocks @ w
    phi_x = normal_doubling(x)
    phi_y = normal_doubling(y)
    cert = certificate_for(t, phi_x @ phi_y, phi_y @ phi_x, tol)
    if not certificate_valid(cert, tol):
        raise IntertwinerNotFound(
            f"assembled doubling intertwiner failed verification (residual {cert.residual:.3g})"
        )
    return cert
