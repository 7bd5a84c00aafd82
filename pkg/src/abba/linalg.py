"""Rank, null spaces, solves, and characteristic polynomials on both backends.

Exact-backend eliminations use fraction-free (Bareiss-style) pivoting so
intermediate entries stay minors of the input; float-backend rank decisions
come from singular values with the relative cutoff

    sigma > rank_rel_tol * sigma_max * max(rows, cols).
"""

from __future__ import annotations

import numpy as np

from .errors import BackendError, ShapeError
from .matrix import EXACT, FLOAT, Matrix, hstack
from .scalars import DEFAULT_TOLERANCE, GQ, TolerancePolicy


def _rows_of(m: Matrix) -> list[list[GQ]]:
    return [[m.array[i, j] for j in range(m.cols)] for i in range(m.rows)]


def _bareiss(rows: list[list[GQ]]) -> tuple[list[int], int, GQ]:
    """Fraction-free elimination in place.

    Returns (pivot columns, swap sign, last pivot).  Each update is
    (p * a - f * b) / prev, where the division is exact because every
    intermediate entry is a minor of the input matrix.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    prev = GQ(1)
    sign = 1
    pivots: list[int] = []
    pr = 0
    for pc in range(ncols):
        piv = None
        for i in range(pr, nrows):
            if rows[i][pc]:
                piv = i
                break
        if piv is None:
            continue
        if piv != pr:
            rows[pr], rows[piv] = rows[piv], rows[pr]
            sign = -sign
        p = rows[pr][pc]
        for i in range(pr + 1, nrows):
            ri = rows[i]
            rp = rows[pr]
            f = ri[pc]
            for j in range(pc + 1, ncols):
                ri[j] = (p * ri[j] - f * rp[j]) / prev
            ri[pc] = GQ(0)
        pivots.append(pc)
        prev = p
        pr += 1
        if pr == nrows:
            break
    return pivots, sign, prev


def _rref(rows: list[list[GQ]]) -> list[int]:
    """Reduced row echelon form in place (rational divisions); returns pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    pr = 0
    for pc in range(ncols):
        piv = None
        for i in range(pr, nrows):
            if rows[i][pc]:
                piv = i
                break
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        p = rows[pr][pc]
        rows[pr] = [x / p for x in rows[pr]]
        for i in range(nrows):
            if i != pr and rows[i][pc]:
                f = rows[i][pc]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return pivots


def _singular_values(m: Matrix) -> np.ndarray:
    return np.linalg.svd(m.array, compute_uv=False)


def _float_rank(m: Matrix, tol: TolerancePolicy) -> int:
    if m.is_zero():
        return 0
    s = _singular_values(m)
    if s.size == 0:
        return 0
    cutoff = tol.rank_rel_tol * float(s[0]) * max(m.rows, m.cols)
    return int(np.count_nonzero(s > cutoff))


def rank(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> int:
    """Rank over the complex field (exact) or numerical rank (float)."""
    if m.backend == EXACT:
        pivots, _, _ = _bareiss(_rows_of(m))
        return len(pivots)
    return _float_rank(m, tol)


def determinant(m: Matrix):
    if not m.is_square:
        raise ShapeError("determinant of a non-square matrix")
    if m.backend == FLOAT:
        return complex(np.linalg.det(m.array))
    pivots, sign, last = _bareiss(_rows_of(m))
    if len(pivots) < m.rows:
        return GQ(0)
    return last * sign


def invertible(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    if not m.is_square:
        return False
    if m.backend == EXACT:
        return rank(m) == m.rows
    if m.rows == 0:
        return True
    s = _singular_values(m)
    return bool(s[-1] > 0 and s[0] / s[-1] <= tol.max_condition)


def condition_estimate(m: Matrix) -> float:
    """sigma_max / sigma_min (float backend; inf when singular)."""
    if m.backend == EXACT:
        raise BackendError("condition estimates are a float-backend notion")
    if m.rows == 0 or m.cols == 0:
        return 1.0
    s = _singular_values(m)
    if s[-1] == 0:
        return float("inf")
    return float(s[0] / s[-1])


def nullspace_basis(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list[Matrix]:
    """Basis of ker(m) as column vectors; length is cols - rank(m)."""
    if m.backend == EXACT:
        rows = _rows_of(m)
        pivots = _rref(rows)
        free = [j for j in range(m.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [[GQ(0)] for _ in range(m.cols)]
            v[f][0] = GQ(1)
            for k, pc in enumerate(pivots):
                v[pc][0] = -rows[k][f]
            basis.append(Matrix.exact(v))
        return basis
    u, s, vh = np.linalg.svd(m.array)
    if m.is_zero():
        r = 0
    else:
        cutoff = tol.rank_rel_tol * float(s[0]) * max(m.rows, m.cols) if s.size else 0.0
        r = int(np.count_nonzero(s > cutoff))
    return [Matrix.from_float(vh.conj().T[:, j].reshape(-1, 1)) for j in range(r, m.cols)]


def solve_linear(a: Matrix, b: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> Matrix | None:
    """Any X with a X = b, or None when the system is inconsistent.

    Exact: consistency is decided exactly.  Float: least-squares solution,
    accepted when the residual is at most residual_tol * ||b||.
    """
    a._check_same_backend(b)
    if a.rows != b.rows:
        raise ShapeError("a and b must have the same number of rows")
    if a.backend == EXACT:
        rows = [[a.array[i, j] for j in range(a.cols)] + [b.array[i, j] for j in range(b.cols)]
                for i in range(a.rows)]
        pivots = _rref(rows)
        if any(pc >= a.cols for pc in pivots):
            return None
        x = [[GQ(0)] * b.cols for _ in range(a.cols)]
        for k, pc in enumerate(pivots):
            for j in range(b.cols):
                x[pc][j] = rows[k][a.cols + j]
        out = Matrix.zeros(a.cols, b.cols)
        arr = out.array.copy()
        for i in range(a.cols):
            for j in range(b.cols):
                arr[i, j] = x[i][j]
        return Matrix(arr, EXACT)
    x, *_ = np.linalg.lstsq(a.array, b.array, rcond=None)
    residual = float(np.linalg.norm(a.array @ x - b.array))
    if residual > tol.residual_tol * max(float(np.linalg.norm(b.array)), 1e-300):
        return None
    return Matrix.from_float(x)


def orthonormal_range_basis(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> Matrix:
    """Columns forming an orthonormal basis of range(m).  Float backend only:
    orthonormalization leaves the Gaussian-rational field."""
    if m.backend == EXACT:
        raise BackendError("orthonormal bases require the float backend")
    u, s, _ = np.linalg.svd(m.array)
    r = _float_rank(m, tol)
    return Matrix.from_float(u[:, :r])


def characteristic_polynomial(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list:
    """Monic coefficients in descending powers, [1, c_1, ..., c_n].

    Exact backend: Faddeev-LeVerrier recursion (error-free).  Float
    backend: expanded from eigenvalues.
    """
    if not m.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = m.rows
    if m.backend == FLOAT:
        if n == 0:
            return [complex(1)]
        eigs = np.linalg.eigvals(m.array)
        return [complex(c) for c in np.poly(eigs)]
    coeffs = [GQ(1)]
    mk = Matrix.identity(n)
    for k in range(1, n + 1):
        am = m @ mk
        ck = -(am.trace() / k)
        coeffs.append(ck)
        mk = am + ck * Matrix.identity(n)
    return coeffs


def principal_minor_sums(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list:
    """e_k = sum of k x k principal minors, k = 0..n, from the characteristic
    polynomial: p(t) = sum_k (-1)^k e_k t^(n-k)."""
    coeffs = characteristic_polynomial(m, tol)
    return [c if k % 2 == 0 else -c for k, c in enumerate(coeffs)]


def rank_of_concatenation(a: Matrix, b: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> int:
    """rank([a | b]) for the column-inclusion and range-comparison tests."""
    return rank(hstack([a, b]), tol)
