"""Singular values by one-sided Jacobi, and Schatten / lp norms.

The SVD is Hestenes' one-sided Jacobi method: columns of a working copy are
rotated pairwise until every pair is numerically orthogonal, at which point
the column norms are the singular values. Pairs are visited in cyclic
row-by-row order; the sweep kernel is compiled with numba.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numba
import numpy as np

from .matrices import as_matrix, as_vector

#: Largest dimension accepted by the dense Jacobi solver.
MAX_SVD_DIM = 2048
#: Pair-orthogonality threshold, relative to the product of column norms.
JACOBI_TOL = 1e-13
MAX_SWEEPS = 60
#: Default relative cutoff for :func:`numerical_rank`.
RANK_TOL = 1e-9
#: Largest finite exponent; beyond it sigma**p overflows and INF should be used.
MAX_FINITE_P = 512.0


class ConvergenceError(ArithmeticError):
    """Jacobi sweeps hit :data:`MAX_SWEEPS`; ``residual`` is the worst pair cosine left."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(f"Jacobi SVD did not converge in {sweeps} sweeps "
                         f"(off-diagonal residual {residual:.3e})")
        self.residual = residual
        self.sweeps = sweeps


@dataclass(frozen=True)
class SchattenExponent:
    """Exponent of a Schatten or lp norm.

    ``value`` is ``0.0`` for rank/support size, ``math.inf`` for the spectral
    (max) norm, and any ``0 < p <= 512`` otherwise.
    """

    value: float

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v) or v < 0:
            raise ValueError(f"exponent must be 0, positive or inf, got {self.value!r}")
        if math.isfinite(v) and v > MAX_FINITE_P:
            raise ValueError(f"finite exponent {v} exceeds {MAX_FINITE_P}; use inf")
        object.__setattr__(self, "value", v)

    @property
    def is_zero(self) -> bool:
        return self.value == 0.0

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    @property
    def is_finite(self) -> bool:
        return not (self.is_zero or self.is_inf)

    @classmethod
    def parse(cls, text: str) -> "SchattenExponent":
        t = text.strip().lower()
        if t in ("inf", "infinity", "∞"):
            return cls(math.inf)
        return cls(float(t))

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        return f"{self.value:g}"

    def reciprocal(self) -> float:
        """``1/p`` with ``1/inf == 0``; undefined for the rank exponent."""
        if self.is_zero:
            raise ValueError("1/p is undefined for p = 0")
        return 0.0 if self.is_inf else 1.0 / self.value


ExponentLike = Union[SchattenExponent, float, int, str]

ZERO = SchattenExponent(0.0)
INF = SchattenExponent(math.inf)


def exponent(p: ExponentLike) -> SchattenExponent:
    """Coerce a float, int, ``"inf"`` string or exponent into a :class:`SchattenExponent`."""
    if isinstance(p, SchattenExponent):
        return p
    if isinstance(p, str):
        return SchattenExponent.parse(p)
    return SchattenExponent(p)


@dataclass(frozen=True)
class Spectrum:
    """Singular values in descending order, with the shape they came from."""

    values: np.ndarray
    shape: tuple[int, int]

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size != min(self.shape):
            raise ValueError("spectrum length must equal min(rows, cols)")
        if np.any(v < 0) or np.any(np.diff(v) > 0):
            raise ValueError("singular values must be nonnegative and descending")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    @property
    def max(self) -> float:
        return float(self.values[0])


@dataclass(frozen=True)
class SVD:
    """Thin SVD ``a = u @ diag(s.values) @ vt``; ``u`` has zero columns where ``s`` is 0."""

    u: np.ndarray
    s: Spectrum
    vt: np.ndarray
    sweeps: int = field(default=0)


@numba.njit(cache=True)
def _jacobi_sweeps(w, v, tol, floor, max_sweeps):
    """Cyclic one-sided Jacobi over the rows of ``w``, rotating ``v`` alongside.

    Returns ``(sweeps, residual)``; ``sweeps > max_sweeps`` signals no convergence.
    """
    n, m = w.shape
    k = v.shape[1]
    norms2 = np.empty(n)
    for i in range(n):
        acc = 0.0
        for col in range(m):
            acc += w[i, col] * w[i, col]
        norms2[i] = acc
    residual = 0.0
    for sweep in range(1, max_sweeps + 1):
        residual = 0.0
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                a = norms2[i]
                b = norms2[j]
                scale = np.sqrt(a * b)
                if scale <= floor:
                    continue
                g = 0.0
                for col in range(m):
                    g += w[i, col] * w[j, col]
                cosine = abs(g) / scale
                if cosine > residual:
                    residual = cosine
                if cosine <= tol:
                    continue
                rotated = True
                zeta = (b - a) / (2.0 * g)
                if zeta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                na = 0.0
                nb = 0.0
                for col in range(m):
                    x = w[i, col]
                    y = w[j, col]
                    x2 = c * x - s * y
                    y2 = s * x + c * y
                    w[i, col] = x2
                    w[j, col] = y2
                    na += x2 * x2
                    nb += y2 * y2
                norms2[i] = na
                norms2[j] = nb
                for col in range(k):
                    x = v[i, col]
                    y = v[j, col]
                    v[i, col] = c * x - s * y
                    v[j, col] = s * x + c * y
        if not rotated:
            return sweep, residual
    return max_sweeps + 1, residual


def _jacobi_rows(w: np.ndarray, v: np.ndarray) -> int:
    """Orthogonalize the rows of ``w`` in place; apply the same rotations to ``v``.

    Rows rather than columns so each inner loop walks contiguous memory.
    """
    if w.shape[0] < 2:
        return 0
    # row pairs below this norm product are roundoff and need no rotation
    floor = (np.finfo(float).eps * max(np.linalg.norm(w), np.finfo(float).tiny)) ** 2
    sweeps, residual = _jacobi_sweeps(w, v, JACOBI_TOL, floor, MAX_SWEEPS)
    if sweeps > MAX_SWEEPS:
        raise ConvergenceError(residual, MAX_SWEEPS)
    return sweeps


def svd(a) -> SVD:
    """Thin singular value decomposition of ``a`` by one-sided Jacobi."""
    a = as_matrix(a)
    if max(a.shape) > MAX_SVD_DIM:
        raise ValueError(f"dense SVD limited to {MAX_SVD_DIM} per dimension, got {a.shape}")
    # orthogonalize the rows of the wide orientation: rows of wt are columns of the tall one
    transposed = a.shape[0] < a.shape[1]
    wt = a if transposed else a.T
    scale = float(np.max(np.abs(wt)))
    n = wt.shape[0]
    if scale == 0.0:
        s = Spectrum(np.zeros(n), a.shape)
        ut = np.zeros_like(wt)
        vt = np.eye(n)
        sweeps = 0
    else:
        w = np.ascontiguousarray(wt / scale)
        vt = np.eye(n)
        sweeps = _jacobi_rows(w, vt)
        norms = np.sqrt(np.einsum("ij,ij->i", w, w))
        order = np.argsort(-norms, kind="stable")
        norms = norms[order]
        w = w[order]
        vt = vt[order]
        ut = np.zeros_like(w)
        pos = norms > 0
        ut[pos] = w[pos] / norms[pos, None]
        s = Spectrum(norms * scale, a.shape)
    # wt = rot.T @ diag(s) @ ut, with rot accumulated in vt
    if transposed:
        return SVD(u=vt.T, s=s, vt=ut, sweeps=sweeps)
    return SVD(u=ut.T, s=s, vt=vt, sweeps=sweeps)


def singular_values(a) -> Spectrum:
    """Singular values of ``a``, descending, no rank cutoff applied."""
    return svd(a).s


SpectrumLike = Union[Spectrum, np.ndarray]


def _as_spectrum(s: SpectrumLike) -> Spectrum:
    if isinstance(s, Spectrum):
        return s
    return singular_values(s)


def numerical_rank(s: SpectrumLike, rel_tol: float = RANK_TOL) -> int:
    """Count of singular values strictly above ``rel_tol * sigma_1``."""
    if not 0 < rel_tol < 1:
        raise ValueError("rel_tol must lie in (0, 1)")
    s = _as_spectrum(s)
    if s.max == 0.0:
        return 0
    return int(np.count_nonzero(s.values > rel_tol * s.max))


def _scaled_power_sum(mags: np.ndarray, p: float, top: float) -> float:
    return float(np.sum((mags / top) ** p))


def schatten_norm(s: SpectrumLike, p: ExponentLike) -> float:
    """Schatten ``p``-norm from a spectrum (or a matrix, whose spectrum is computed).

    Finite ``p`` is evaluated as ``sigma_1 * (sum (sigma_i/sigma_1)**p)**(1/p)``
    so large exponents do not overflow. ``p = inf`` gives ``sigma_1`` and
    ``p = 0`` gives the numerical rank.
    """
    p = exponent(p)
    s = _as_spectrum(s)
    if p.is_zero:
        return float(numerical_rank(s))
    top = s.max
    if top == 0.0:
        return 0.0
    if p.is_inf:
        return top
    return top * _scaled_power_sum(s.values, p.value, top) ** (1.0 / p.value)


def schatten_power(s: SpectrumLike, p: ExponentLike) -> float:
    """``sum sigma_i**p``, i.e. the p-th power of the Schatten norm (rank for p = 0)."""
    p = exponent(p)
    if p.is_inf:
        raise ValueError("schatten_power is undefined for p = inf")
    s = _as_spectrum(s)
    if p.is_zero:
        return float(numerical_rank(s))
    return float(np.sum(s.values ** p.value))


def lp_norm(x, p: ExponentLike) -> float:
    """Vector lp norm; ``p = inf`` is the max magnitude and ``p = 0`` counts nonzeros."""
    p = exponent(p)
    x = as_vector(x, "x")
    mags = np.abs(x)
    if p.is_zero:
        return float(np.count_nonzero(mags))
    top = float(mags.max())
    if top == 0.0:
        return 0.0
    if p.is_inf:
        return top
    return top * _scaled_power_sum(mags, p.value, top) ** (1.0 / p.value)
