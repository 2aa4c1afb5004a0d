"""Empirical hardness probes: sparsify ``B`` with concrete strategies and measure the S_q error.

None of this proves a lower bound; it records how far known strategies fall
short at sub-quadratic budgets. Budgets are given as fractions of ``nnz(B)``
(for the Hadamard and all-ones families ``nnz(B) = n**2``).

Randomness comes from numpy's PCG64 bit generator seeded per run, so a given
``(strategy, seed, budget, B)`` reproduces the same candidate bit for bit.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .instances import HardInstance
from .matrices import as_matrix, nnz
from .mtxio import format_value
from .spectra import ExponentLike, SchattenExponent, exponent, schatten_norm, singular_values

TOP_K = "topk"
UNIFORM = "uniform"
WEIGHTED = "weighted"
STRATEGIES = (TOP_K, UNIFORM, WEIGHTED)
CSV_FIELDS = ("strategy", "seed", "budget_frac", "achieved_nnz", "q", "rel_error")


@dataclass(frozen=True)
class AttackResult:
    strategy: str
    seed: int | None
    budget_frac: float
    budget: int
    achieved_nnz: int
    q: SchattenExponent
    rel_error: float

    def row(self) -> dict:
        return {
            "strategy": self.strategy,
            "seed": "" if self.seed is None else str(self.seed),
            "budget_frac": format_value(self.budget_frac),
            "achieved_nnz": str(self.achieved_nnz),
            "q": str(self.q),
            "rel_error": format_value(self.rel_error),
        }


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _check_budget(b: np.ndarray, budget: int) -> None:
    if budget < 0 or budget > b.size:
        raise ValueError(f"budget {budget} outside [0, {b.size}]")


def attack_topk(b, budget: int) -> np.ndarray:
    """Keep the ``budget`` largest-magnitude entries of ``b``; ties go to row-major order."""
    b = as_matrix(b, "B")
    _check_budget(b, budget)
    flat = b.ravel()
    keep = np.argsort(-np.abs(flat), kind="stable")[:budget]
    out = np.zeros_like(flat)
    out[keep] = flat[keep]
    return out.reshape(b.shape)


def _sample(b: np.ndarray, probs: np.ndarray, seed: int) -> np.ndarray:
    """Keep entry ``(i, j)`` with probability ``probs[i, j]``, rescaled by ``1/probs``."""
    kept = _rng(seed).random(b.shape) < probs
    out = np.zeros_like(b)
    out[kept] = b[kept] / probs[kept]
    return out


def attack_uniform(b, budget: int, seed: int) -> np.ndarray:
    """Independent sampling with the same keep probability ``budget / size`` everywhere."""
    b = as_matrix(b, "B")
    _check_budget(b, budget)
    return _sample(b, np.full(b.shape, budget / b.size), seed)


def attack_weighted(b, budget: int, seed: int) -> np.ndarray:
    """Independent sampling with keep probability ``min(1, budget * b_ij**2 / ||b||_F**2)``."""
    b = as_matrix(b, "B")
    _check_budget(b, budget)
    sq = b * b
    total = sq.sum()
    if total == 0.0:
        return np.zeros_like(b)
    return _sample(b, np.minimum(1.0, budget * sq / total), seed)


def run_strategy(strategy: str, b, budget: int, seed: int | None = None) -> np.ndarray:
    if strategy == TOP_K:
        return attack_topk(b, budget)
    if seed is None:
        raise ValueError(f"strategy {strategy!r} needs a seed")
    if strategy == UNIFORM:
        return attack_uniform(b, budget, seed)
    if strategy == WEIGHTED:
        return attack_weighted(b, budget, seed)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def relative_error(b, b_cand, q: ExponentLike) -> float:
    """``||b_cand - b||_q / ||b||_q`` from exact (Jacobi) singular values."""
    b = as_matrix(b, "B")
    b_cand = as_matrix(b_cand, "B_cand")
    if b.shape != b_cand.shape:
        raise ValueError(f"shape mismatch: {b.shape} vs {b_cand.shape}")
    ref = schatten_norm(singular_values(b), q)
    if ref == 0.0:
        raise ValueError("B has zero norm")
    return schatten_norm(singular_values(b_cand - b), q) / ref


def evaluate(b, b_cand, q: ExponentLike, strategy: str = "", seed: int | None = None,
             budget: int | None = None, budget_frac: float = float("nan")) -> AttackResult:
    q = exponent(q)
    err = relative_error(b, b_cand, q)
    achieved = nnz(b_cand)
    return AttackResult(strategy=strategy, seed=seed, budget_frac=budget_frac,
                        budget=achieved if budget is None else budget,
                        achieved_nnz=achieved, q=q, rel_error=err)


def budget_for(b, frac: float) -> int:
    """Entry budget for a fraction of ``nnz(b)``."""
    if not 0 <= frac <= 1:
        raise ValueError(f"budget fraction {frac} outside [0, 1]")
    return int(round(frac * nnz(b)))


def sweep(inst: HardInstance, strategies: Sequence[str], budget_fracs: Sequence[float],
          seeds: Sequence[int], q: ExponentLike | None = None) -> list[AttackResult]:
    """Run every strategy at every budget fraction (and every seed for sampling strategies).

    ``TOP_K`` is deterministic and runs once per budget with ``seed = None``.
    Results come back ordered by strategy (as given), budget fraction, then seed.
    """
    q = inst.q if q is None else exponent(q)
    for s in strategies:
        if s not in STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}; expected one of {STRATEGIES}")
    results = []
    for strategy in strategies:
        for frac in sorted(set(budget_fracs)):
            budget = budget_for(inst.B, frac)
            for seed in ([None] if strategy == TOP_K else sorted(set(seeds))):
                cand = run_strategy(strategy, inst.B, budget, seed)
                results.append(evaluate(inst.B, cand, q, strategy=strategy, seed=seed,
                                        budget=budget, budget_frac=frac))
    return results


def results_csv(results: Iterable[AttackResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow(r.row())
    return buf.getvalue()


def summarize(results: Iterable[AttackResult], eps0: float | None = None) -> dict:
    """Min/max relative error per ``(strategy, budget_frac)``.

    With ``eps0`` each cell also records whether every run stayed above it.
    """
    cells: dict[tuple[str, float], list[AttackResult]] = {}
    for r in results:
        cells.setdefault((r.strategy, r.budget_frac), []).append(r)
    rows = []
    for (strategy, frac), rs in cells.items():
        errs = [r.rel_error for r in rs]
        row = {"strategy": strategy, "budget_frac": frac, "budget": rs[0].budget,
               "runs": len(rs), "min_rel_error": min(errs), "max_rel_error": max(errs)}
        if eps0 is not None:
            row["above_eps0"] = min(errs) > eps0
        rows.append(row)
    return {"cells": rows, "note": "empirical evidence against the tried strategies only"}


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"


def zero_half_columns(b, rows: tuple[int, int]) -> np.ndarray:
    """Copy of ``b`` with the second half of the columns zeroed inside a row group."""
    b = np.array(as_matrix(b, "B"))
    lo, hi = rows
    b[lo:hi, b.shape[1] // 2:] = 0.0
    return b


def block_spectral_errors(b, b_cand, groups: Sequence[tuple[int, int]]) -> list[float]:
    """Per row group ``U_i``: ``||(b_cand - b)[U_i]||_inf / ||b[U_i]||_inf``."""
    b = as_matrix(b, "B")
    diff = as_matrix(b_cand, "B_cand") - b
    out = []
    for lo, hi in groups:
        ref = singular_values(b[lo:hi]).max
        out.append(singular_values(diff[lo:hi]).max / ref)
    return out
