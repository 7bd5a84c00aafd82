"""Matrix interchange format (JSON).

Document shape:

    {"scalar": "exact" | "float", "rows": n, "cols": m,
     "entries": [[[re, im], ...], ...]}

Entries are row-major; re/im are strings.  The exact backend accepts
integers and fractions ("p", "-p/q"); the float backend accepts decimal
literals.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import MatrixFormatError
from .matrix import EXACT, FLOAT, Matrix
from .scalars import GQ

_EXACT_RE = re.compile(r"^-?\d+(/\d+)?$")


def _parse_exact_part(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _EXACT_RE.match(s.strip()):
        raise MatrixFormatError(f"exact entries must look like 'p' or 'p/q', got {s!r}")
    return Fraction(s.strip())


def _parse_float_part(s) -> float:
    if isinstance(s, bool):
        raise MatrixFormatError(f"not a number: {s!r}")
    if isinstance(s, (int, float)):
        return float(s)
    if isinstance(s, str):
        try:
            return float(s)
        except ValueError:
            raise MatrixFormatError(f"not a decimal literal: {s!r}") from None
    raise MatrixFormatError(f"not a number: {s!r}")


def parse_matrix(doc: dict) -> Matrix:
    if not isinstance(doc, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    scalar = doc.get("scalar")
    if scalar not in (EXACT, FLOAT):
        raise MatrixFormatError(f"scalar tag must be 'exact' or 'float', got {scalar!r}")
    rows, cols = doc.get("rows"), doc.get("cols")
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 1 and cols >= 1):
        raise MatrixFormatError("rows and cols must be positive integers")
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != rows:
        raise MatrixFormatError(f"expected {rows} rows of entries")
    grid = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFormatError(f"row {i} must have {cols} entries")
        out_row = []
        for j, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                raise MatrixFormatError(f"entry ({i},{j}) must be an [re, im] pair")
            re_part, im_part = pair
            if scalar == EXACT:
                out_row.append(GQ(_parse_exact_part(re_part), _parse_exact_part(im_part)))
            else:
                out_row.append(complex(_parse_float_part(re_part), _parse_float_part(im_part)))
        grid.append(out_row)
    if scalar == EXACT:
        return Matrix.exact(grid)
    return Matrix.from_float(grid)


def dump_matrix(m: Matrix) -> dict:
    entries = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            v = m[i, j]
            if m.backend == EXACT:
                row.append([str(v.re), str(v.im)])
            else:
                row.append([repr(float(v.real)), repr(float(v.imag))])
        entries.append(row)
    return {"scalar": m.backend, "rows": m.rows, "cols": m.cols, "entries": entries}


def load_matrix(path) -> Matrix:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON ({exc})") from None
    return parse_matrix(doc)


def save_matrix(m: Matrix, path) -> None:
    Path(path).write_text(json.dumps(dump_matrix(m), indent=1, sort_keys=True) + "\n")
