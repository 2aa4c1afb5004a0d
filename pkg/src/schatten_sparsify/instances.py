"""Hard instances ``A = A' + B`` separating Schatten-p from Schatten-q sparsification.

Each family pairs a sparse ``A'`` (``n`` or ``1`` nonzeros) with a dense ``B`` so that

* ``||B||_p / ||A'||_p`` is small (``A'`` alone approximates ``A`` in S_p),
* ``||A'||_q == ||B||_q`` (``B`` carries half of ``A`` in S_q),
* ``B`` itself cannot be approximated in S_q without about ``n**2`` nonzeros.

Families, with ``n = 2**k`` and logarithms taken base 2 (so ``log n == k``):

1. ``q >= 2, p < q``: ``B`` is ``m = n/k**2`` Hadamard rows each repeated
   ``k**2`` times, ``A' = sqrt(n) * k**(1 - 2/q) * I``.
2. ``p > q >= 2``: ``B = n**(-1/q - 1/2) * H_n``, ``A'`` a single unit entry.
3. ``p < q <= 2``: ``B = n**(1/q - 1) * J_n``, ``A' = I``.
4. ``1 <= q < min(p, 2)``: ``B = k**(-1/q) * C`` with ``C`` block diagonal of
   ``k`` blocks ``J_m / m``, ``m = n/k``; ``A'`` a single unit entry.

Cases 1 and 3 also accept ``0 <= p < 1``, where ``p = 0`` compares ranks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .matrices import (all_ones, block_diagonal, hadamard, identity, kronecker,
                       single_entry)
from .mtxio import atomic_write_text, format_value, read_matrix, write_matrix
from .spectra import ExponentLike, SchattenExponent, Spectrum, exponent

#: Approximation constant the hardness side is stated for.
EPS0 = 0.1
CASES = (1, 2, 3, 4)
POWER_OF_TWO_K = (2, 4, 8, 16)


@dataclass(frozen=True)
class AnalyticFacts:
    """Closed-form spectra and ratios an instance must reproduce numerically."""

    B_spectrum: Spectrum
    Ap_spectrum: Spectrum
    p2_ratio: float
    q_norm: float


@dataclass(frozen=True)
class HardInstance:
    case_id: int
    k: int
    n: int
    p: SchattenExponent
    q: SchattenExponent
    A_prime: np.ndarray
    B: np.ndarray
    A: np.ndarray
    eps_threshold: float
    expected: AnalyticFacts
    eps0: float = EPS0
    degenerate: bool = False
    # row groups of B sharing one Hadamard row (case 1) or one block (case 4)
    groups: tuple[tuple[int, int], ...] = field(default=())

    @property
    def nnz_bound(self) -> int:
        return self.n if self.case_id in (1, 3) else 1

    def metadata(self) -> dict:
        return {
            "case_id": self.case_id,
            "k": self.k,
            "n": self.n,
            "p": str(self.p),
            "q": str(self.q),
            "eps_threshold": format_value(self.eps_threshold),
            "eps0": format_value(self.eps0),
            "degenerate": self.degenerate,
            "groups": [list(g) for g in self.groups],
            "expected": {
                "p2_ratio": format_value(self.expected.p2_ratio),
                "q_norm": format_value(self.expected.q_norm),
                "B_spectrum": _compress(self.expected.B_spectrum),
                "Ap_spectrum": _compress(self.expected.Ap_spectrum),
            },
        }


def _compress(s: Spectrum) -> list[list]:
    """Run-length encode a spectrum as ``[[value, count], ...]``."""
    runs: list[list] = []
    for v in s.values:
        text = format_value(float(v))
        if runs and runs[-1][0] == text:
            runs[-1][1] += 1
        else:
            runs.append([text, 1])
    return runs


def _expand(runs, n: int) -> Spectrum:
    values = np.concatenate([np.full(int(count), float(v)) for v, count in runs])
    return Spectrum(values, (n, n))


def _spectrum(n: int, value: float, count: int) -> Spectrum:
    values = np.zeros(n)
    values[:count] = value
    return Spectrum(values, (n, n))


def _schatten_of_flat(value: float, count: int, p: SchattenExponent) -> float:
    """Schatten norm of a spectrum with ``count`` copies of ``value`` and zeros."""
    if p.is_zero:
        return float(count)
    if p.is_inf:
        return value
    return count ** (1.0 / p.value) * value


def _check_k(k: int, allowed=None) -> int:
    if isinstance(k, bool) or int(k) != k:
        raise ValueError(f"k must be an integer, got {k!r}")
    k = int(k)
    if allowed is not None and k not in allowed:
        raise ValueError(f"k must be one of {allowed} (a power of 2 so the block sizes are "
                         f"integral), got {k}")
    if not 1 <= k <= 16:
        raise ValueError(f"k must lie in [1, 16], got {k}")
    return k


def _assemble(case_id, k, p, q, a_prime, b, facts, degenerate=False, groups=()):
    a = a_prime + b
    a.setflags(write=False)
    return HardInstance(case_id=case_id, k=k, n=2 ** k, p=p, q=q, A_prime=a_prime, B=b, A=a,
                        eps_threshold=facts.p2_ratio, expected=facts,
                        degenerate=degenerate, groups=tuple(groups))


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def build_case1(k: int, p: ExponentLike, q: ExponentLike) -> HardInstance:
    """Replicated Hadamard rows against a scaled identity (``q >= 2``, ``p < q``)."""
    k = _check_k(k, POWER_OF_TWO_K)
    p, q = exponent(p), exponent(q)
    if not (q.is_inf or q.value >= 2):
        raise ValueError(f"case 1 needs q >= 2, got q={q}")
    if p.is_inf or not p.value < q.value:
        raise ValueError(f"case 1 needs p < q, got p={p}, q={q}")
    n = 2 ** k
    height = k * k
    m = n // height
    # first m Hadamard rows, each repeated `height` times
    b = kronecker(hadamard(k)[:m], np.ones((height, 1)))
    sigma = math.sqrt(n) * k
    scale = math.sqrt(n) * k ** (1.0 - 2.0 * q.reciprocal())
    a_prime = _frozen(scale * identity(n))
    facts = AnalyticFacts(
        B_spectrum=_spectrum(n, sigma, m),
        Ap_spectrum=_spectrum(n, scale, n),
        p2_ratio=_schatten_of_flat(sigma, m, p) / _schatten_of_flat(scale, n, p),
        q_norm=_schatten_of_flat(scale, n, q),
    )
    groups = [(i * height, (i + 1) * height) for i in range(m)]
    return _assemble(1, k, p, q, a_prime, b, facts, degenerate=(m == 1), groups=groups)


def build_case2(k: int, p: ExponentLike, q: ExponentLike) -> HardInstance:
    """Scaled full Hadamard matrix against a single unit entry (``p > q >= 2``)."""
    k = _check_k(k)
    p, q = exponent(p), exponent(q)
    if q.is_inf or q.value < 2:
        raise ValueError(f"case 2 needs finite q >= 2, got q={q}")
    if not (p.is_inf or p.value > q.value):
        raise ValueError(f"case 2 needs p > q, got p={p}, q={q}")
    n = 2 ** k
    scale = n ** (-q.reciprocal() - 0.5)
    b = _frozen(scale * hadamard(k))
    sigma = n ** -q.reciprocal()
    facts = AnalyticFacts(
        B_spectrum=_spectrum(n, sigma, n),
        Ap_spectrum=_spectrum(n, 1.0, 1),
        p2_ratio=_schatten_of_flat(sigma, n, p),
        q_norm=1.0,
    )
    return _assemble(2, k, p, q, single_entry(n), b, facts)


def build_case3(k: int, p: ExponentLike, q: ExponentLike) -> HardInstance:
    """Scaled all-ones matrix against the identity (``p < q <= 2``)."""
    k = _check_k(k)
    p, q = exponent(p), exponent(q)
    if q.is_inf or q.is_zero or q.value > 2:
        raise ValueError(f"case 3 needs 0 < q <= 2, got q={q}")
    if p.is_inf or not p.value < q.value:
        raise ValueError(f"case 3 needs p < q, got p={p}, q={q}")
    n = 2 ** k
    b = _frozen(n ** (q.reciprocal() - 1.0) * all_ones(n))
    sigma = n ** q.reciprocal()
    facts = AnalyticFacts(
        B_spectrum=_spectrum(n, sigma, 1),
        Ap_spectrum=_spectrum(n, 1.0, n),
        p2_ratio=_schatten_of_flat(sigma, 1, p) / _schatten_of_flat(1.0, n, p),
        q_norm=sigma,
    )
    return _assemble(3, k, p, q, identity(n), b, facts)


def build_case4(k: int, p: ExponentLike, q: ExponentLike) -> HardInstance:
    """Scaled block diagonal of normalized all-ones blocks against a unit entry."""
    k = _check_k(k, POWER_OF_TWO_K)
    p, q = exponent(p), exponent(q)
    if not (q.is_finite and 1 <= q.value < 2):
        raise ValueError(f"case 4 needs 1 <= q < 2, got q={q}")
    if not (p.is_inf or p.value > q.value):
        raise ValueError(f"case 4 needs p > q, got p={p}, q={q}")
    n = 2 ** k
    m = n // k
    c = block_diagonal([all_ones(m) / m] * k)
    b = _frozen(k ** -q.reciprocal() * c)
    sigma = k ** -q.reciprocal()
    facts = AnalyticFacts(
        B_spectrum=_spectrum(n, sigma, k),
        Ap_spectrum=_spectrum(n, 1.0, 1),
        p2_ratio=_schatten_of_flat(sigma, k, p),
        q_norm=1.0,
    )
    groups = [(i * m, (i + 1) * m) for i in range(k)]
    return _assemble(4, k, p, q, single_entry(n), b, facts, groups=groups)


BUILDERS = {1: build_case1, 2: build_case2, 3: build_case3, 4: build_case4}


def build_instance(case_id: int, k: int, p: ExponentLike, q: ExponentLike) -> HardInstance:
    try:
        builder = BUILDERS[case_id]
    except KeyError:
        raise ValueError(f"case must be one of {CASES}, got {case_id!r}") from None
    return builder(k, p, q)


def vector_counterexample(n: int, q: ExponentLike) -> np.ndarray:
    """``(1, n**(-1/q), ..., n**(-1/q))``: sparse in lp for p > q but not in lq."""
    q = exponent(q)
    if n < 2:
        raise ValueError("n must be at least 2")
    if not (q.is_finite and q.value >= 1):
        raise ValueError(f"q must be finite and >= 1, got {q}")
    x = np.full(n, n ** -q.reciprocal())
    x[0] = 1.0
    return x


INSTANCE_FILES = ("A_prime.mtx", "B.mtx", "A.mtx", "instance.json")


def save_instance(inst: HardInstance, directory) -> None:
    """Write the three matrices and ``instance.json`` into ``directory``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_matrix(d / "A_prime.mtx", inst.A_prime)
    write_matrix(d / "B.mtx", inst.B)
    write_matrix(d / "A.mtx", inst.A)
    atomic_write_text(d / "instance.json", json.dumps(inst.metadata(), indent=2) + "\n")


def load_instance(directory) -> HardInstance:
    """Read an instance written by :func:`save_instance`.

    Matrices are taken from the files as-is; analytic facts come from the JSON,
    so a tampered matrix shows up as a failed check rather than being rebuilt.
    """
    d = Path(directory)
    meta = json.loads((d / "instance.json").read_text())
    n = int(meta["n"])
    exp = meta["expected"]
    facts = AnalyticFacts(
        B_spectrum=_expand(exp["B_spectrum"], n),
        Ap_spectrum=_expand(exp["Ap_spectrum"], n),
        p2_ratio=float(exp["p2_ratio"]),
        q_norm=float(exp["q_norm"]),
    )
    mats = {name: read_matrix(d / f"{name}.mtx") for name in ("A_prime", "B", "A")}
    for name, mat in mats.items():
        if mat.shape != (n, n):
            raise ValueError(f"{name}.mtx has shape {mat.shape}, expected {(n, n)}")
    return HardInstance(
        case_id=int(meta["case_id"]), k=int(meta["k"]), n=n,
        p=SchattenExponent.parse(meta["p"]), q=SchattenExponent.parse(meta["q"]),
        A_prime=mats["A_prime"], B=mats["B"], A=mats["A"],
        eps_threshold=float(meta["eps_threshold"]), expected=facts,
        eps0=float(meta.get("eps0", EPS0)), degenerate=bool(meta.get("degenerate", False)),
        groups=tuple(tuple(g) for g in meta.get("groups", [])),
    )
