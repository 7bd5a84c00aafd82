"""Named fixtures with machine-checkable claims, plus randomized searches.

The fixtures are the small matrices that witness where product
similarity and unitary similarity break: the 2x2 nilpotent pair, the
3x3 Hermitian pair whose products are similar but not unitarily so, the
3x3 transpose example, the 4x4 Hermitian/normal pair with different rank
sequences, and the rational conjugator used by the doubling construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import generators as gen
from .classes import is_hermitian, is_normal
from .linalg import invertible, rank
from .matrix import EXACT, FLOAT, Matrix, block
from .rankseq import RankSequence, rank_sequence
from .scalars import DEFAULT_TOLERANCE, GQ, TolerancePolicy
from .similarity import (
    decide_product_similarity,
    doubling_conjugator,
    find_intertwiner,
    hermitian_parts,
    normal_doubling,
    verify_certificate,
)
from .unitary import word_trace_screen

FAMILIES = ("normal", "hermitian", "psd", "ep", "zero-one-normal")


@dataclass(frozen=True)
class Claim:
    name: str
    fn: Callable[[dict], bool]


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    matrices: dict
    claims: tuple[Claim, ...]

    def evaluate(self, backend: str = EXACT) -> list[tuple[str, bool]]:
        mats = self.matrices
        if backend == FLOAT:
            mats = {k: v.to_float() for k, v in mats.items()}
        return [(c.name, bool(c.fn(mats))) for c in self.claims]


def _close(m1: Matrix, m2: Matrix, tol: float = 1e-10) -> bool:
    d = m1 - m2
    if m1.backend == EXACT:
        return d.is_zero()
    return d.frobenius() <= tol * max(1.0, m1.frobenius())


def _intertwiner_ok(m1: Matrix, m2: Matrix) -> bool:
    cert = find_intertwiner(m1, m2, seed=0)
    return cert is not None and verify_certificate(cert, m1, m2).ok


def catalog() -> list[Fixture]:
    a2 = Matrix.exact([[0, 1], [0, 0]])
    b2 = Matrix.exact([[0, 0], [0, 1]])

    a3 = Matrix.exact([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    b3 = Matrix.exact([[0, -1j, 1j], [1j, 0, -1j], [-1j, 1j, 0]])

    at = Matrix.exact([[0, 1, 0], [0, 0, 2], [0, 0, 0]])

    a4 = Matrix.exact([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]])
    b4 = Matrix.exact([[0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]])

    w = doubling_conjugator(2)
    w_sample = Matrix.exact([[(1, 2), (0, -1)], [(3, 0), (-1, 1)]])

    def conjugation_diagonalizes(mats: dict) -> bool:
        ww = mats["w"]
        backend = ww.backend
        x = w_sample if backend == EXACT else w_sample.to_float()
        n = x.rows
        h, k = hermitian_parts(x)
        eye = Matrix.identity(n, backend)
        winv_scaled = block([[eye, -eye], [eye, eye]])  # 2 * inverse(w)
        lhs = ww @ normal_doubling(x) @ winv_scaled
        four_i = GQ(0, 4) if backend == EXACT else 4j
        zero = Matrix.zeros(n, n, backend)
        rhs = block([[h * 4, zero], [zero, k * four_i]])
        return _close(lhs, rhs)

    return [
        Fixture(
            name="nilpotent-2x2",
            description="Smallest pair with AB not similar to BA",
            matrices={"a": a2, "b": b2},
            claims=(
                Claim("not-similar", lambda m: not decide_product_similarity(m["a"], m["b"]).similar),
                Claim("seq-ab", lambda m: rank_sequence(m["a"] @ m["b"]).terms == (2, 1, 0)),
                Claim("seq-ba", lambda m: rank_sequence(m["b"] @ m["a"]).terms == (2, 0)),
            ),
        ),
        Fixture(
            name="hermitian-products-3x3",
            description="Hermitian pair: products similar but not unitarily similar",
            matrices={"a": a3, "b": b3},
            claims=(
                Claim("a-hermitian", lambda m: is_hermitian(m["a"])),
                Claim("b-hermitian", lambda m: is_hermitian(m["b"])),
                Claim("products-similar", lambda m: decide_product_similarity(m["a"], m["b"]).similar),
                Claim(
                    "intertwiner-found",
                    lambda m: _intertwiner_ok(m["a"] @ m["b"], m["b"] @ m["a"]),
                ),
                Claim(
                    "word-trace-distinguishes",
                    lambda m: word_trace_screen(m["a"] @ m["b"], m["b"] @ m["a"], 6).distinguished,
                ),
            ),
        ),
        Fixture(
            name="transpose-3x3",
            description="Similar to its transpose but not unitarily similar to it",
            matrices={"a": at},
            claims=(
                Claim("similar-to-transpose", lambda m: _intertwiner_ok(m["a"], m["a"].transpose())),
                Claim(
                    "word-trace-distinguishes",
                    lambda m: word_trace_screen(m["a"], m["a"].transpose(), 6).distinguished,
                ),
            ),
        ),
        Fixture(
            name="hermitian-normal-4x4",
            description="Hermitian a, normal b with AB not similar to BA (minimal size and rank)",
            matrices={"a": a4, "b": b4},
            claims=(
                Claim("a-hermitian", lambda m: is_hermitian(m["a"])),
                Claim("b-normal", lambda m: is_normal(m["b"])),
                Claim("seq-ab", lambda m: rank_sequence(m["a"] @ m["b"]).terms == (4, 2, 0)),
                Claim("seq-ba", lambda m: rank_sequence(m["b"] @ m["a"]).terms == (4, 2, 1, 0)),
                Claim("not-similar", lambda m: not decide_product_similarity(m["a"], m["b"]).similar),
                Claim("ab-squared-zero", lambda m: _close((m["a"] @ m["b"]) @ (m["a"] @ m["b"]),
                                                          Matrix.zeros(4, 4, m["a"].backend))),
                Claim("ba-squared-nonzero", lambda m: not _close((m["b"] @ m["a"]) @ (m["b"] @ m["a"]),
                                                                 Matrix.zeros(4, 4, m["a"].backend))),
            ),
        ),
        Fixture(
            name="doubling-conjugator",
            description="Rational conjugator that block-diagonalizes every doubled matrix",
            matrices={"w": w},
            claims=(
                Claim("invertible", lambda m: invertible(m["w"])),
                Claim("conjugation-block-diagonalizes", conjugation_diagonalizes),
            ),
        ),
    ]


def get_fixture(name: str) -> Fixture:
    for f in catalog():
        if f.name == name:
            return f
    raise KeyError(name)


@dataclass(frozen=True)
class SearchSpec:
    """Randomized search for non-similar product pairs within a family.

    The rank constraint applies to the first matrix of each pair; the
    second is drawn from the same family with an unconstrained rank.
    """

    family: str
    size: int
    rank: int | None = None
    trials: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.size < 1:
            raise ValueError("size must be positive")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.rank is not None and not 0 <= self.rank <= self.size:
            raise ValueError("rank must lie between 0 and size")

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "size": self.size,
            "rank": self.rank,
            "trials": self.trials,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Finding:
    trial: int
    a: Matrix
    b: Matrix
    seq_ab: RankSequence
    seq_ba: RankSequence

    def to_json(self) -> dict:
        from .matio import dump_matrix

        return {
            "trial": self.trial,
            "a": dump_matrix(self.a),
            "b": dump_matrix(self.b),
            "seq_ab": self.seq_ab.to_json(),
            "seq_ba": self.seq_ba.to_json(),
        }


def _draw(family: str, n: int, rng, rank_: int | None) -> Matrix:
    if family == "normal":
        return gen.rational_normal(n, rng, rank=rank_)
    if family == "hermitian":
        return gen.rational_hermitian(n, rng, rank=rank_)
    if family == "psd":
        return gen.rational_psd(n, rng, rank=rank_)
    if family == "ep":
        return gen.rational_ep(n, rng, rank=rank_)
    if family == "zero-one-normal":
        return gen.zero_one_normal(n, rng, rank=rank_)
    raise ValueError(family)


def search_counterexample(
    spec: SearchSpec, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> list[Finding]:
    """Run the seeded trials; every non-similar pair becomes a Finding.

    Generation is exact, so findings are proofs, not numerical artifacts.
    Trial i uses the derived seed (spec.seed, i) and is independent of
    all other trials.
    """
    findings: list[Finding] = []
    for i in range(spec.trials):
        rng = np.random.default_rng([spec.seed, i])
        a = _draw(spec.family, spec.size, rng, spec.rank)
        b = _draw(spec.family, spec.size, rng, None)
        verdict = decide_product_similarity(a, b, tol)
        if not verdict.similar:
            findings.append(
                Finding(trial=i, a=a, b=b, seq_ab=verdict.seq_ab, seq_ba=verdict.seq_ba)
            )
    return findings


def admissible_sequence_pairs(
    n: int = 4,
    cap: int = 2,
    require_differ: bool = True,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered pattern pairs compatible with a non-similar product pair:
    same second entry (ranks of AB and BA agree), same limit (invertible
    parts agree), and, unless disabled, different sequences."""
    from .rankseq import enumerate_tail_sequences

    patterns = enumerate_tail_sequences(n, cap)
    pairs = []
    for i, p in enumerate(patterns):
        start = i + 1 if require_differ else i
        for q in patterns[start:]:
            sp = RankSequence.from_terms(p)
            sq = RankSequence.from_terms(q)
            if sp.expand(2)[1] != sq.expand(2)[1]:
                continue
            if sp.limit != sq.limit:
                continue
            pairs.append((p, q))
    return pairs


def minimal_counterexample_analysis() -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The unique rank-sequence pattern pair a minimal (4x4, rank 3)
    non-similar normal product pair must realize."""
    pairs = admissible_sequence_pairs(n=4, cap=2, require_differ=True)
    if len(pairs) != 1:
        raise AssertionError(f"expected a unique admissible pair, got {pairs}")
    return pairs[0]
