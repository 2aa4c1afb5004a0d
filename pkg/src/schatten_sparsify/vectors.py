"""Promoting an lp sparsifier of a vector to an lq sparsifier (p < q).

If ``x`` has an ``eps``-accurate lp sparsifier with ``s`` nonzeros, then keeping
the ``s + c`` largest entries is ``eps``-accurate in lq, where

    c = ((1 - eps**q)**(1/q) / (1 - eps**p)**(1/p)) ** (1 / (1/p - 1/q)) * s

and ``c <= e * s`` whenever ``eps < 1/e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrices import as_vector, head, tail
from .spectra import ExponentLike, SchattenExponent, exponent, lp_norm

EPS_CEILING = 1.0 / math.e


class OutOfRangeError(ValueError):
    """Parameters outside the range where the promotion guarantee is proven."""


@dataclass(frozen=True)
class PromotionBudget:
    s: int
    c_exact: float
    c_rounded: int
    eps: float
    p: SchattenExponent
    q: SchattenExponent

    @property
    def total(self) -> int:
        return self.s + self.c_rounded


def _check_pq(p: SchattenExponent, q: SchattenExponent) -> None:
    if not (p.is_finite and p.value >= 1):
        raise ValueError(f"p must be finite and >= 1, got {p}")
    if not (q.is_inf or q.value > p.value):
        raise ValueError(f"q must exceed p, got p={p}, q={q}")


def min_lp_sparsity(x, eps: float, p: ExponentLike) -> int:
    """Smallest ``s`` with ``||tail(x, s)||_p <= eps * ||x||_p``.

    Keeping the largest entries minimizes every lp tail norm, so a prefix scan
    over the sorted magnitudes finds the optimum.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    p = exponent(p)
    if not (p.is_inf or (p.is_finite and p.value >= 1)):
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    x = as_vector(x, "x")
    mags = np.sort(np.abs(x))[::-1]
    top = mags[0]
    if top == 0.0:
        return 0
    if p.is_inf:
        # tail(s) has sup norm mags[s]
        tails = np.append(mags, 0.0)
        bound = eps * top
    else:
        powers = (mags / top) ** p.value
        # suffix sums, accumulated from the smallest entry upwards
        suffix = np.append(np.cumsum(powers[::-1])[::-1], 0.0)
        tails = suffix ** (1.0 / p.value)
        bound = eps * tails[0]
    return int(np.argmax(tails <= bound))


def extra_budget(s: int, eps: float, p: ExponentLike, q: ExponentLike) -> PromotionBudget:
    """Number of extra entries needed to turn an lp sparsifier into an lq one."""
    p, q = exponent(p), exponent(q)
    _check_pq(p, q)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if not 0 < eps < EPS_CEILING:
        raise OutOfRangeError(f"eps={eps} outside (0, 1/e)")
    keep_q = 1.0 if q.is_inf else (1.0 - eps ** q.value) ** (1.0 / q.value)
    keep_p = (1.0 - eps ** p.value) ** (1.0 / p.value)
    gap = p.reciprocal() - q.reciprocal()
    ratio = (keep_q / keep_p) ** (1.0 / gap)
    if math.log(ratio) > 1.0:
        raise ArithmeticError(f"ln(c/s) = {math.log(ratio)} exceeds 1")
    c_exact = ratio * s
    return PromotionBudget(s=s, c_exact=c_exact, c_rounded=math.ceil(c_exact),
                           eps=eps, p=p, q=q)


def promote_sparsifier(x, eps: float, p: ExponentLike, q: ExponentLike,
                       budget: PromotionBudget | None = None) -> np.ndarray:
    """``head(x, s + ceil(c))`` where ``s`` is the minimal lp sparsity of ``x``.

    The result satisfies ``||x - result||_q <= eps * ||x||_q``. A precomputed
    ``budget`` (from :func:`promotion_budget`) skips the sparsity scan.
    """
    x = as_vector(x, "x")
    if not np.any(x):
        raise ValueError("x must be nonzero")
    if budget is None:
        budget = promotion_budget(x, eps, p, q)
    return head(x, min(budget.total, x.size))


def promotion_budget(x, eps: float, p: ExponentLike, q: ExponentLike) -> PromotionBudget:
    p, q = exponent(p), exponent(q)
    _check_pq(p, q)
    if not 0 < eps < EPS_CEILING:
        raise OutOfRangeError(f"eps={eps} outside (0, 1/e)")
    return extra_budget(min_lp_sparsity(x, eps, p), eps, p, q)


def tail_bound(x, c: int, p: ExponentLike, q: ExponentLike) -> tuple[float, float]:
    """Both sides of ``||tail(x, c)||_q <= c**-(1/p - 1/q) * ||x||_p``."""
    p, q = exponent(p), exponent(q)
    _check_pq(p, q)
    x = as_vector(x, "x")
    if not 1 <= c < x.size:
        raise ValueError(f"c must lie in [1, {x.size}), got {c}")
    lhs = lp_norm(tail(x, c), q)
    rhs = c ** -(p.reciprocal() - q.reciprocal()) * lp_norm(x, p)
    return lhs, rhs
