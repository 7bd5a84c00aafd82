"""Dense complex matrices over two scalar backends.

A matrix is either ``exact`` (entries are :class:`GaussianRational`,
stored in a numpy object array) or ``float`` (complex128).  Values are
immutable after construction; every operation returns a new matrix.
Mixing backends in one operation raises :class:`BackendError`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BackendError, ShapeError
from .scalars import GQ, GaussianRational

EXACT = "exact"
FLOAT = "float"


class Matrix:
    __slots__ = ("_data", "_backend")

    def __init__(self, data: np.ndarray, backend: str):
        if backend not in (EXACT, FLOAT):
            raise BackendError(f"unknown backend {backend!r}")
        if data.ndim != 2:
            raise ShapeError("matrix data must be two-dimensional")
        data.flags.writeable = False
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "_backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction ---------------------------------------------------

    @staticmethod
    def exact(rows: Sequence[Sequence]) -> "Matrix":
        """Exact matrix from nested entries (ints, Fractions, strings,
        (re, im) pairs, integral complex literals, GaussianRationals)."""
        conv = [[GQ.coerce(x) for x in row] for row in rows]
        ncols = {len(r) for r in conv}
        if len(conv) == 0 or len(ncols) != 1:
            raise ShapeError("rows must be nonempty and of equal length")
        arr = np.empty((len(conv), ncols.pop()), dtype=object)
        for i, row in enumerate(conv):
            for j, x in enumerate(row):
                arr[i, j] = x
        return Matrix(arr, EXACT)

    @staticmethod
    def from_float(rows) -> "Matrix":
        arr = np.array(rows, dtype=np.complex128)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        return Matrix(arr, FLOAT)

    @staticmethod
    def zeros(rows: int, cols: int, backend: str = EXACT) -> "Matrix":
        if backend == EXACT:
            arr = np.empty((rows, cols), dtype=object)
            arr[...] = GQ(0)
            return Matrix(arr, EXACT)
        return Matrix(np.zeros((rows, cols), dtype=np.complex128), FLOAT)

    @staticmethod
    def identity(n: int, backend: str = EXACT) -> "Matrix":
        if backend == EXACT:
            arr = np.empty((n, n), dtype=object)
            arr[...] = GQ(0)
            for i in range(n):
                arr[i, i] = GQ(1)
            return Matrix(arr, EXACT)
        return Matrix(np.eye(n, dtype=np.complex128), FLOAT)

    @staticmethod
    def diagonal(values: Sequence, backend: str = EXACT) -> "Matrix":
        n = len(values)
        out = Matrix.zeros(n, n, backend)
        arr = out._data.copy()
        for i, v in enumerate(values):
            arr[i, i] = GQ.coerce(v) if backend == EXACT else complex(v)
        return Matrix(arr, backend)

    # -- basic properties -----------------------------------------------

    @property
    def backend(self) -> str:
        return self._backend

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def array(self) -> np.ndarray:
        """The underlying read-only numpy array."""
        return self._data

    def __getitem__(self, key):
        i, j = key
        return self._data[i, j]

    def tolist(self) -> list[list]:
        return [[self._data[i, j] for j in range(self.cols)] for i in range(self.rows)]

    # -- arithmetic -------------------------------------------------------

    def _check_same_backend(self, other: "Matrix"):
        if self._backend != other._backend:
            raise BackendError("mixed exact/float operands")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_backend(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        out = np.dot(self._data, other._data)
        if self._backend == EXACT:
            out = _renormalize_exact(out)
        return Matrix(out, self._backend)

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_backend(other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        return Matrix(self._data + other._data, self._backend)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_backend(other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in subtraction")
        return Matrix(self._data - other._data, self._backend)

    def __neg__(self) -> "Matrix":
        return Matrix(-self._data, self._backend)

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        if self._backend == EXACT:
            s = GQ.coerce(scalar)
            return Matrix(self._data * s, EXACT)
        return Matrix(self._data * complex(scalar), FLOAT)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self._backend != other._backend or self.shape != other.shape:
            return False
        return bool(np.all(self._data == other._data))

    def __hash__(self):
        return hash((self._backend, self.shape))

    # -- structural operations --------------------------------------------

    def adjoint(self) -> "Matrix":
        """Conjugate transpose."""
        if self._backend == EXACT:
            arr = np.empty((self.cols, self.rows), dtype=object)
            for i in range(self.rows):
                for j in range(self.cols):
                    arr[j, i] = self._data[i, j].conjugate()
            return Matrix(arr, EXACT)
        return Matrix(self._data.conj().T.copy(), FLOAT)

    def transpose(self) -> "Matrix":
        return Matrix(self._data.T.copy(), self._backend)

    def conjugate(self) -> "Matrix":
        if self._backend == EXACT:
            arr = np.empty(self.shape, dtype=object)
            for i in range(self.rows):
                for j in range(self.cols):
                    arr[i, j] = self._data[i, j].conjugate()
            return Matrix(arr, EXACT)
        return Matrix(self._data.conj().copy(), FLOAT)

    def trace(self):
        if not self.is_square:
            raise ShapeError("trace of a non-square matrix")
        if self._backend == EXACT:
            t = GQ(0)
            for i in range(self.rows):
                t = t + self._data[i, i]
            return t
        return complex(np.trace(self._data))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Submatrix of rows [r0, r1) and columns [c0, c1)."""
        return Matrix(self._data[r0:r1, c0:c1].copy(), self._backend)

    def column(self, j: int) -> "Matrix":
        return self.block(0, self.rows, j, j + 1)

    def to_float(self) -> "Matrix":
        """Float copy (identity on float matrices)."""
        if self._backend == FLOAT:
            return self
        arr = np.empty(self.shape, dtype=np.complex128)
        for i in range(self.rows):
            for j in range(self.cols):
                arr[i, j] = complex(self._data[i, j])
        return Matrix(arr, FLOAT)

    # -- predicates and norms ----------------------------------------------

    def is_zero(self) -> bool:
        """Entrywise exact-zero test (no tolerance, either backend)."""
        if self._backend == EXACT:
            return all(not self._data[i, j] for i in range(self.rows) for j in range(self.cols))
        return bool(np.all(self._data == 0))

    def frobenius(self) -> float:
        if self._backend == EXACT:
            s = Fraction(0)
            for i in range(self.rows):
                for j in range(self.cols):
                    s += self._data[i, j].norm_sq()
            return float(s) ** 0.5
        return float(np.linalg.norm(self._data))

    def __repr__(self):
        return f"Matrix({self._backend}, {self.rows}x{self.cols})"


def _renormalize_exact(arr: np.ndarray) -> np.ndarray:
    # numpy seeds empty inner-dimension dot products with int 0
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = v if isinstance(v, GaussianRational) else GQ.coerce(v)
    return out


def hstack(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    backend = mats[0].backend
    if any(m.backend != backend for m in mats):
        raise BackendError("mixed backends in hstack")
    return Matrix(np.hstack([m.array for m in mats]), backend)


def vstack(mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    backend = mats[0].backend
    if any(m.backend != backend for m in mats):
        raise BackendError("mixed backends in vstack")
    return Matrix(np.vstack([m.array for m in mats]), backend)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a 2-D grid of blocks (zero-sized blocks allowed)."""
    return vstack([hstack(row) for row in grid])


def kron(a: Matrix, b: Matrix) -> Matrix:
    a._check_same_backend(b)
    out = np.kron(a.array, b.array)
    if a.backend == EXACT:
        out = _renormalize_exact(out)
    return Matrix(out, a.backend)
