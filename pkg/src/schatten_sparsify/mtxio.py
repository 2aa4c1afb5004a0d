"""Coordinate text format for dense matrices.

The first line is ``rows cols nnz``; each of the following ``nnz`` lines is
``i j value`` with 1-based indices. Unlisted entries are zero and a repeated
``(i, j)`` is an error. Values are written with 17 significant digits, so a
write/read cycle reproduces the float64 entries exactly.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .matrices import MAX_DIM, as_matrix


class ParseError(ValueError):
    """Malformed coordinate file; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_value(v: float) -> str:
    return f"{v:.17g}"


def dumps_matrix(a) -> str:
    a = as_matrix(a)
    rows, cols = np.nonzero(a)
    lines = [f"{a.shape[0]} {a.shape[1]} {rows.size}"]
    lines.extend(f"{i + 1} {j + 1} {format_value(a[i, j])}" for i, j in zip(rows, cols))
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, what: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", line) from None


def loads_matrix(text: str) -> np.ndarray:
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), start=1)]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise ParseError("empty file, expected header 'rows cols nnz'", 1)
    no, toks = lines[0]
    if len(toks) != 3:
        raise ParseError("header must be 'rows cols nnz'", no)
    rows, cols, count = (_parse_int(t, "header field", no) for t in toks)
    if not (1 <= rows <= MAX_DIM and 1 <= cols <= MAX_DIM):
        raise ParseError(f"dimensions {rows}x{cols} outside [1, {MAX_DIM}]", no)
    if count < 0:
        raise ParseError(f"negative entry count {count}", no)
    body = lines[1:]
    if len(body) != count:
        last = body[-1][0] if body else no
        raise ParseError(f"header declares {count} entries, found {len(body)}", last)

    out = np.zeros((rows, cols))
    seen = set()
    for no, toks in body:
        if len(toks) != 3:
            raise ParseError("entry must be 'i j value'", no)
        i = _parse_int(toks[0], "row index", no)
        j = _parse_int(toks[1], "column index", no)
        try:
            v = float(toks[2])
        except ValueError:
            raise ParseError(f"value {toks[2]!r} is not numeric", no) from None
        if not np.isfinite(v):
            raise ParseError(f"value {toks[2]!r} is not finite", no)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(f"index ({i}, {j}) outside {rows}x{cols}", no)
        if (i, j) in seen:
            raise ParseError(f"duplicate entry ({i}, {j})", no)
        seen.add((i, j))
        out[i - 1, j - 1] = v
    return out


def read_matrix(path) -> np.ndarray:
    return loads_matrix(Path(path).read_text())


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to a sibling temp file and rename it over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_matrix(path, a) -> None:
    atomic_write_text(path, dumps_matrix(a))
