"""Dense matrix and vector builders, head/tail selection and support counting.

Matrices are plain 2-D ``float64`` numpy arrays and vectors are 1-D arrays.
Every builder returns a fresh array flagged read-only; arithmetic on them
produces ordinary writable arrays.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

#: Largest supported row or column count.
MAX_DIM = 2 ** 16


class SizeError(ValueError):
    """Raised when a requested matrix exceeds :data:`MAX_DIM` in some dimension."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a finite, non-empty 2-D real matrix and return a float64 view/copy."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"{name} must have positive dimensions, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def as_index_set(idx: Iterable[int], bound: int, name: str = "index set") -> np.ndarray:
    """Validate a strictly increasing set of 0-based indices below ``bound``."""
    arr = np.asarray(list(idx), dtype=np.intp)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size and (arr[0] < 0 or arr[-1] >= bound):
        raise ValueError(f"{name} has indices outside [0, {bound})")
    if np.any(np.diff(arr) <= 0):
        raise ValueError(f"{name} must be strictly increasing")
    return arr


def _check_dims(rows: int, cols: int) -> None:
    if rows > MAX_DIM or cols > MAX_DIM:
        raise SizeError(f"{rows}x{cols} exceeds the {MAX_DIM} per-dimension ceiling")


def hadamard(k: int) -> np.ndarray:
    """Sylvester Hadamard matrix of order ``2**k``.

    Built by repeated doubling ``H -> [[H, H], [H, -H]]``, so the first row
    and first column are all ones and ``H @ H.T == 2**k * I`` exactly.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > 16:
        raise SizeError(f"hadamard order 2**{k} exceeds the 2**16 ceiling")
    h = np.ones((1, 1))
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return _frozen(h)


def kronecker(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    _check_dims(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return _frozen(np.kron(a, b))


def block_diagonal(blocks: Sequence) -> np.ndarray:
    """Place ``blocks`` along the diagonal in order; everything else is exactly 0."""
    if len(blocks) == 0:
        raise ValueError("block_diagonal needs at least one block")
    mats = [as_matrix(b, "block") for b in blocks]
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    _check_dims(rows, cols)
    out = np.zeros((rows, cols))
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return _frozen(out)


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    _check_dims(n, n)


def all_ones(n: int) -> np.ndarray:
    _check_n(n)
    return _frozen(np.ones((n, n)))


def identity(n: int) -> np.ndarray:
    _check_n(n)
    return _frozen(np.eye(n))


def single_entry(n: int) -> np.ndarray:
    """``n x n`` matrix whose only nonzero is a 1 in the top-left corner."""
    _check_n(n)
    out = np.zeros((n, n))
    out[0, 0] = 1.0
    return _frozen(out)


def _head_indices(x: np.ndarray, c: int) -> np.ndarray:
    if not 0 <= c <= x.size:
        raise ValueError(f"c={c} outside [0, {x.size}]")
    # stable sort: among equal magnitudes the lower index wins
    return np.argsort(-np.abs(x), kind="stable")[:c]


def head(x, c: int) -> np.ndarray:
    """Keep the ``c`` largest-magnitude entries of ``x`` in place and zero the rest.

    Ties are broken towards lower indices.
    """
    x = as_vector(x, "x")
    out = np.zeros_like(x)
    keep = _head_indices(x, c)
    out[keep] = x[keep]
    return out


def tail(x, c: int) -> np.ndarray:
    """``x - head(x, c)``: the entries that ``head`` discards."""
    x = as_vector(x, "x")
    out = x.copy()
    out[_head_indices(x, c)] = 0.0
    return out


def nnz(a) -> int:
    """Number of entries with nonzero value, counted exactly (no tolerance)."""
    return int(np.count_nonzero(np.asarray(a)))
