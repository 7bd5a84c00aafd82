"""Command line interface: classify, rankseq, decide, unitary, search, catalog.

Reports are JSON on stdout.  Exit codes: 0 for a completed run (verdicts
live in the payload, never in the exit code), 2 for invalid input or
usage, 1 for internal errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from pathlib import Path

from .catalog import FAMILIES, SearchSpec, catalog, get_fixture, search_counterexample
from .classes import classify, is_ep, is_psd, realpart_psd_same_rank
from .errors import (
    BackendError,
    HypothesisViolation,
    IntertwinerNotFound,
    MatrixFormatError,
    ShapeError,
)
from .matio import dump_matrix, load_matrix, save_matrix
from .matrix import Matrix
from .rankseq import rank_sequence
from .scalars import DEFAULT_TOLERANCE, TolerancePolicy
from .similarity import (
    construct_similarity_psd_ep,
    decide_product_similarity,
    find_intertwiner,
)
from .unitary import decide_unitary_2x2, word_trace_screen

SCHEMA_VERSION = 1

_USAGE_ERRORS = (
    MatrixFormatError,
    ShapeError,
    BackendError,
    HypothesisViolation,
    ValueError,
    KeyError,
    OSError,
)


def _policy(args) -> TolerancePolicy:
    base = DEFAULT_TOLERANCE
    residual = rank_rel = None
    if args.tol is not None:
        residual = rank_rel = args.tol
    if args.residual_tol is not None:
        residual = args.residual_tol
    if args.rank_rel_tol is not None:
        rank_rel = args.rank_rel_tol
    return TolerancePolicy(
        rank_rel_tol=rank_rel if rank_rel is not None else base.rank_rel_tol,
        residual_tol=residual if residual is not None else base.residual_tol,
        max_condition=args.max_condition if args.max_condition is not None else base.max_condition,
    )


def _digest(path) -> dict:
    data = Path(path).read_bytes()
    return {"path": str(path), "sha256": hashlib.sha256(data).hexdigest()[:16]}


def _report(command: str, inputs: dict, result: dict, caught) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        "warnings": [str(w.message) for w in caught],
    }


def _load_square(path) -> Matrix:
    m = load_matrix(path)
    if not m.is_square:
        raise MatrixFormatError(f"{path}: expected a square matrix, got {m.rows}x{m.cols}")
    return m


def cmd_classify(args, tol) -> dict:
    m = _load_square(args.matrix)
    report = classify(m, tol)
    return {"class_report": report.to_json()}


def cmd_rankseq(args, tol) -> dict:
    m = _load_square(args.matrix)
    return {"rank_sequence": rank_sequence(m, tol).to_json()}


def cmd_decide(args, tol) -> dict:
    a = _load_square(args.a)
    b = _load_square(args.b)
    verdict = decide_product_similarity(a, b, tol)
    result = {"verdict": verdict.to_json()}
    if args.construct:
        cert = None
        method = None
        if (is_psd(a, tol) or realpart_psd_same_rank(a, tol)) and is_ep(b, tol):
            try:
                cert = construct_similarity_psd_ep(a, b, tol)
                method = "psd-ep-transform"
            except (BackendError, HypothesisViolation):
                cert = None
        if cert is None and verdict.similar:
            cert = find_intertwiner(a @ b, b @ a, seed=args.seed, attempts=args.attempts, tol=tol)
            if cert is not None:
                method = "sylvester-sampling"
        result["certificate"] = cert.to_json() if cert else None
        result["construction"] = method
    return result


def cmd_unitary(args, tol) -> dict:
    a = _load_square(args.a)
    b = _load_square(args.b)
    screen = word_trace_screen(a, b, max_len=args.max_word_len, tol=tol)
    result = {"word_screen": screen.to_json()}
    if a.shape == (2, 2) and b.shape == (2, 2):
        result["triple_invariant_equal"] = decide_unitary_2x2(a, b, tol)
    else:
        result["triple_invariant_equal"] = None
    return result


def cmd_search(args, tol) -> dict:
    spec = SearchSpec(
        family=args.family,
        size=args.size,
        rank=args.rank,
        trials=args.trials,
        seed=args.seed,
    )
    findings = search_counterexample(spec, tol)
    return {
        "spec": spec.to_json(),
        "count": len(findings),
        "findings": [f.to_json() for f in findings],
    }


def cmd_catalog(args, tol) -> dict:
    if args.action == "list":
        return {
            "fixtures": [{"name": f.name, "description": f.description} for f in catalog()]
        }
    fixture = get_fixture(args.name)
    result = {
        "name": fixture.name,
        "description": fixture.description,
        "matrices": {k: dump_matrix(v) for k, v in fixture.matrices.items()},
        "claims": [{"name": n, "pass": ok} for n, ok in fixture.evaluate()],
    }
    if args.export:
        out_dir = Path(args.export)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for k, v in fixture.matrices.items():
            path = out_dir / f"{fixture.name}__{k}.json"
            save_matrix(v, path)
            written.append(str(path))
        result["exported"] = written
    return result


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="override residual and rank tolerances jointly")
    common.add_argument("--rank-rel-tol", type=float, default=None)
    common.add_argument("--residual-tol", type=float, default=None)
    common.add_argument("--max-condition", type=float, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json"], default="json")

    parser = argparse.ArgumentParser(
        prog="abba",
        description="Decide and certify (non-)similarity of the products AB and BA",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="structural predicates of one matrix")
    p.add_argument("matrix")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("rankseq", parents=[common], help="rank sequence of one matrix")
    p.add_argument("matrix")
    p.set_defaults(fn=cmd_rankseq)

    p = sub.add_parser("decide", parents=[common], help="similarity verdict for AB vs BA")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--construct", action="store_true",
                   help="also attempt an explicit similarity certificate")
    p.add_argument("--attempts", type=int, default=32)
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("unitary", parents=[common], help="unitary-similarity word screen")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-word-len", type=int, default=6)
    p.set_defaults(fn=cmd_unitary)

    p = sub.add_parser("search", parents=[common], help="randomized counterexample search")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--size", required=True, type=int)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--trials", type=int, default=500)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("catalog", parents=[common], help="built-in fixtures")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--export", default=None, metavar="DIR")
    p.set_defaults(fn=cmd_catalog)

    return parser


def _gather_inputs(args) -> dict:
    inputs: dict = {}
    for attr in ("matrix", "a", "b"):
        path = getattr(args, attr, None)
        if path is not None:
            inputs[attr] = _digest(path)
    if args.command == "search":
        inputs["spec"] = {
            "family": args.family, "size": args.size, "rank": args.rank,
            "trials": args.trials, "seed": args.seed,
        }
    if args.command == "catalog":
        inputs["action"] = args.action
        if args.name:
            inputs["name"] = args.name
    return inputs


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "show" and not args.name:
        parser.error("catalog show requires a fixture name")
    try:
        tol = _policy(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            inputs = _gather_inputs(args)
            result = args.fn(args, tol)
        report = _report(args.command, inputs, result, caught)
    except _USAGE_ERRORS as exc:
        print(f"abba: error: {exc}", file=sys.stderr)
        return 2
    except IntertwinerNotFound as exc:
        print(f"abba: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure
        print(f"abba: internal error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
