"""Rank sequences {rank(m^j)} and their combinatorics.

A rank sequence is nonincreasing and convex (first differences are
nonincreasing), stabilizes within n steps, and determines the nilpotent
Jordan structure: the j-th drop equals the number of Jordan blocks at
eigenvalue zero of size at least j+1.  Sequences are stored only up to
stabilization; the final term repeats forever.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import ShapeError, ToleranceWarning
from .linalg import rank
from .matrix import EXACT, FLOAT, Matrix
from .scalars import DEFAULT_TOLERANCE, GQ, TolerancePolicy


@dataclass(frozen=True)
class RankSequence:
    """Stabilized encoding of {rank(m^j)}: terms[0] = n, last term = limit."""

    n: int
    terms: tuple[int, ...]
    limit: int

    @staticmethod
    def from_terms(terms: Sequence[int]) -> "RankSequence":
        terms = stabilize(terms)
        return RankSequence(n=terms[0], terms=terms, limit=terms[-1])

    def drops(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.terms, self.terms[1:]))

    def expand(self, length: int) -> tuple[int, ...]:
        """The sequence padded with its limit out to `length` terms."""
        if length <= len(self.terms):
            return self.terms[:length]
        return self.terms + (self.limit,) * (length - len(self.terms))

    def to_json(self) -> dict:
        return {"n": self.n, "terms": list(self.terms), "limit": self.limit}

    def __str__(self):
        return "(" + ", ".join(map(str, self.terms)) + ", ...)"


def stabilize(terms: Sequence[int]) -> tuple[int, ...]:
    """Truncate after the first term equal to its successor."""
    out = [terms[0]]
    for t in terms[1:]:
        if t == out[-1]:
            break
        out.append(t)
    return tuple(out)


def is_valid_rank_sequence(seq: Sequence[int]) -> bool:
    """Nonincreasing, convex, nonnegative (with constant continuation)."""
    if len(seq) == 0:
        raise ValueError("empty sequence")
    if any(t < 0 for t in seq):
        return False
    drops = [a - b for a, b in zip(seq, seq[1:])]
    if any(d < 0 for d in drops):
        return False
    return all(a >= b for a, b in zip(drops, drops[1:]))


def _clamped_terms(raw: Sequence[int]) -> tuple[list[int], bool]:
    """Clamp any float-noise rank increase back to nonincreasing."""
    out = [raw[0]]
    clamped = False
    for t in raw[1:]:
        if t > out[-1]:
            t = out[-1]
            clamped = True
        out.append(t)
    return out, clamped


def rank_sequence(m: Matrix, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> RankSequence:
    """Ranks of successive powers of m until two consecutive values agree.

    Powers are formed by repeated multiplication so every intermediate
    rank is observed.  On the float backend a rank increase between
    consecutive powers (impossible in exact arithmetic) is clamped and
    reported as a ToleranceWarning.
    """
    if not m.is_square:
        raise ShapeError("rank sequences require a square matrix")
    n = m.rows
    raw = [n]
    power = Matrix.identity(n, m.backend)
    for _ in range(n + 1):
        power = power @ m
        r = rank(power, tol)
        raw.append(r)
        lo = min(raw[-2], raw[-1])
        if raw[-1] >= raw[-2] or lo == 0:
            break
    if m.backend == FLOAT:
        terms, clamped = _clamped_terms(raw)
        if clamped:
            warnings.warn(
                "numerical rank increased between consecutive powers; clamped",
                ToleranceWarning,
                stacklevel=2,
            )
    else:
        terms = list(raw)
    return RankSequence.from_terms(terms)


def drops(seq: RankSequence | Sequence[int]) -> tuple[int, ...]:
    """First differences of the stabilized sequence (nonincreasing)."""
    if isinstance(seq, RankSequence):
        return seq.drops()
    if not is_valid_rank_sequence(seq):
        raise ValueError("not a valid rank sequence")
    st = stabilize(seq)
    return tuple(a - b for a, b in zip(st, st[1:]))


def realize_rank_sequence(seq: Sequence[int]) -> Matrix:
    """An exact matrix whose rank sequence is the stabilization of seq.

    Built as identity of size limit, plus one nilpotent Jordan block of
    size j+1 for each unit the j-th drop exceeds the (j+1)-th.
    """
    if not is_valid_rank_sequence(seq):
        raise ValueError("not a valid rank sequence")
    st = stabilize(seq)
    n = st[0]
    limit = st[-1]
    dr = [a - b for a, b in zip(st, st[1:])]
    # number of blocks of size exactly k: drop[k-1] - drop[k]
    sizes: list[int] = []
    for k in range(len(dr), 0, -1):
        count = dr[k - 1] - (dr[k] if k < len(dr) else 0)
        sizes.extend([k] * count)
    grid = Matrix.zeros(n, n).array.copy()
    for i in range(limit):
        grid[i, i] = GQ(1)
    pos = limit
    for size in sizes:
        for i in range(size - 1):
            grid[pos + i, pos + i + 1] = GQ(1)
        pos += size
    assert pos == n
    return Matrix(grid, EXACT)


def enumerate_tail_sequences(n: int, cap: int) -> list[tuple[int, ...]]:
    """All stabilized rank sequences starting at n with second term <= cap.

    Returned in expansion order (compare sequences padded with their
    limits), so constant-tail variants sort after their decreasing
    prefixes of equal second term.
    """
    if cap > n:
        raise ValueError("cap must not exceed n")
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    results: list[tuple[int, ...]] = []

    def extend(prefix: list[int], last_drop: int):
        results.append(tuple(prefix))
        current = prefix[-1]
        for d in range(1, min(last_drop, current) + 1):
            extend(prefix + [current - d], d)

    for second in range(cap + 1):
        if second == n:
            results.append((n,))
            continue
        extend([n, second], n - second)
    seqs = sorted(set(results), key=lambda s: RankSequence.from_terms(s).expand(n + 1))
    return seqs
