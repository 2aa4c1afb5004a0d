"""Numerical checks of sparsifier definitions, instance properties and norm inequalities.

Every check returns a :class:`CheckRecord` holding both sides of the relation
it tests, the tolerance used and the outcome; failures are data, not
exceptions. Three relation kinds are used:

``le``  pass iff ``lhs <= rhs * (1 + tol)``
``ge``  pass iff ``rhs <= lhs * (1 + tol)``
``eq``  pass iff ``|lhs - rhs| <= tol * max(|lhs|, |rhs|)``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .instances import HardInstance
from .matrices import as_index_set, as_matrix, as_vector, nnz
from .spectra import (INF, ExponentLike, Spectrum, exponent, lp_norm, schatten_norm,
                      schatten_power, singular_values, svd)

DEFAULT_TOL = 1e-6
PINCHING_TOL = 1e-10
ROTFELD_TOL = 1e-9
HOLDER_TOL = 1e-12
SPECTRAL_TOL = 1e-9
PSD_TOL = 1e-10


@dataclass
class CheckRecord:
    name: str
    lhs: float
    rhs: float
    tol: float
    kind: str = "le"
    passed: bool = field(init=False)
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if self.kind == "le":
            self.passed = self.lhs <= self.rhs * (1.0 + self.tol)
        elif self.kind == "ge":
            self.passed = self.rhs <= self.lhs * (1.0 + self.tol)
        elif self.kind == "eq":
            self.passed = abs(self.lhs - self.rhs) <= self.tol * max(abs(self.lhs), abs(self.rhs))
        else:
            raise ValueError(f"unknown check kind {self.kind!r}")

    def to_dict(self) -> dict:
        d = {"name": self.name, "kind": self.kind, "lhs": self.lhs, "rhs": self.rhs,
             "tol": self.tol, "pass": self.passed}
        if self.info:
            d["info"] = self.info
        return d


@dataclass
class VerificationReport:
    checks: list[CheckRecord] = field(default_factory=list)
    instance: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"instance": self.instance, "checks": [c.to_dict() for c in self.checks],
                "warnings": list(self.warnings), "pass": self.passed}


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def check_sparsifier(a, a_cand, eps: float, p: ExponentLike, tol: float = 0.0) -> CheckRecord:
    """Is ``a_cand`` an ``(eps, S_p)`` approximation of ``a``? Records ``nnz(a_cand)`` too."""
    a = as_matrix(a, "A")
    a_cand = as_matrix(a_cand, "A_cand")
    _same_shape(a, a_cand)
    p = exponent(p)
    lhs = schatten_norm(singular_values(a - a_cand), p)
    rhs = eps * schatten_norm(singular_values(a), p)
    return CheckRecord(f"sparsifier S_{p}", lhs, rhs, tol, info={"nnz": nnz(a_cand), "eps": eps})


def _spectrum_deviation(computed: Spectrum, expected: Spectrum) -> float:
    scale = expected.max if expected.max > 0 else 1.0
    return float(np.max(np.abs(computed.values - expected.values)) / scale)


def check_instance(inst: HardInstance, eps: float, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check P1-P3 of a hard instance and the resulting ``2 eps`` S_p approximation.

    Whether ``B`` resists sparse S_q approximation is not decidable here; see
    :mod:`schatten_sparsify.attacks` for empirical evidence.
    """
    p, q = inst.p, inst.q
    report = VerificationReport(instance=inst.metadata() | {"eps": eps, "tol": tol})
    if not eps > inst.eps_threshold:
        report.warnings.append(
            f"eps={eps!r} is not above the instance threshold {inst.eps_threshold!r}; "
            "P2 is expected to fail")
    add = report.checks.append

    recon = np.max(np.abs(inst.A - (inst.A_prime + inst.B)))
    add(CheckRecord("A = A' + B", recon, 0.0, 0.0))
    add(CheckRecord("P1 nnz(A')", nnz(inst.A_prime), inst.nnz_bound, 0.0))

    s_ap = singular_values(inst.A_prime)
    s_b = singular_values(inst.B)
    s_a = singular_values(inst.A)

    ap_p = schatten_norm(s_ap, p)
    b_p = schatten_norm(s_b, p)
    ratio = b_p / ap_p if ap_p > 0 else math.inf
    add(CheckRecord("P2 ||B||_p / ||A'||_p < eps", ratio, eps, 0.0))
    add(CheckRecord("P2 ratio matches analytic", ratio, inst.expected.p2_ratio, tol, kind="eq"))

    ap_q = schatten_norm(s_ap, q)
    b_q = schatten_norm(s_b, q)
    add(CheckRecord("P3 ||A'||_q = ||B||_q", ap_q, b_q, tol, kind="eq"))
    add(CheckRecord("P3 common value matches analytic", b_q, inst.expected.q_norm, tol, kind="eq"))

    add(CheckRecord("B spectrum matches analytic",
                    _spectrum_deviation(s_b, inst.expected.B_spectrum), tol, 0.0))
    add(CheckRecord("A' spectrum matches analytic",
                    _spectrum_deviation(s_ap, inst.expected.Ap_spectrum), tol, 0.0))

    # A' approximates A: ||A - A'||_p = ||B||_p <= 2 eps ||A||_p
    add(CheckRecord("||A - A'||_p <= 2 eps ||A||_p", b_p, 2 * eps * schatten_norm(s_a, p), tol))
    return report


def _principal_parts(parts: Sequence, n: int) -> list[np.ndarray]:
    sets = [as_index_set(part, n, "part") for part in parts]
    if sets:
        joined = np.concatenate(sets)
        if np.unique(joined).size != joined.size:
            raise ValueError("parts must be pairwise disjoint")
    return sets


def check_pinching(a, parts: Sequence, p: ExponentLike, tol: float = PINCHING_TOL) -> CheckRecord:
    """``||A||_p**p >= sum_j ||A[I_j, I_j]||_p**p`` over disjoint index sets ``I_j``.

    For ``p = inf`` the sum becomes a maximum of spectral norms.
    """
    a = as_matrix(a, "A")
    if a.shape[0] != a.shape[1]:
        raise ValueError("pinching needs a square matrix")
    p = exponent(p)
    if not (p.is_inf or p.value >= 1):
        raise ValueError(f"pinching needs p >= 1, got {p}")
    sets = _principal_parts(parts, a.shape[0])
    blocks = [singular_values(a[np.ix_(idx, idx)]) for idx in sets if idx.size]
    if p.is_inf:
        lhs = schatten_norm(a, INF)
        rhs = max((b.max for b in blocks), default=0.0)
    else:
        lhs = schatten_power(singular_values(a), p)
        rhs = sum(schatten_power(b, p) for b in blocks)
    return CheckRecord(f"pinching S_{p}", lhs, rhs, tol, kind="ge")


def check_block_pinching(a, col_groups: Sequence, q: ExponentLike,
                         tol: float = PINCHING_TOL) -> CheckRecord:
    """``||A||_q**q >= sum_i ||A[:, U_i]||_inf**q`` for disjoint column groups, ``q >= 2``."""
    a = as_matrix(a, "A")
    q = exponent(q)
    if not (q.is_inf or q.value >= 2):
        raise ValueError(f"block pinching needs q >= 2, got {q}")
    sets = _principal_parts(col_groups, a.shape[1])
    norms = [singular_values(a[:, idx]).max for idx in sets if idx.size]
    if q.is_inf:
        lhs = schatten_norm(a, INF)
        rhs = max(norms, default=0.0)
    else:
        lhs = schatten_power(singular_values(a), q)
        rhs = float(sum(x ** q.value for x in norms))
    return CheckRecord(f"block pinching S_{q}", lhs, rhs, tol, kind="ge")


def check_rotfeld(a, b, p: ExponentLike, tol: float = ROTFELD_TOL) -> CheckRecord:
    """``||A + B||_p**p <= ||A||_p**p + ||B||_p**p`` for ``0 < p <= 1``."""
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    _same_shape(a, b)
    p = exponent(p)
    if not (p.is_finite and p.value <= 1):
        raise ValueError(f"Rotfeld subadditivity needs 0 < p <= 1, got {p}")
    lhs = schatten_power(a + b, p)
    rhs = schatten_power(a, p) + schatten_power(b, p)
    return CheckRecord(f"Rotfeld S_{p}", lhs, rhs, tol)


def check_holder_vectors(x, p: ExponentLike, q: ExponentLike,
                         tol: float = HOLDER_TOL) -> list[CheckRecord]:
    """``||x||_q <= ||x||_p <= n**(1/p - 1/q) ||x||_q`` for ``1 <= p < q``; two records."""
    x = as_vector(x, "x")
    p, q = exponent(p), exponent(q)
    if not (p.is_finite and p.value >= 1 and (q.is_inf or q.value > p.value)):
        raise ValueError(f"need 1 <= p < q, got p={p}, q={q}")
    xp, xq = lp_norm(x, p), lp_norm(x, q)
    growth = x.size ** (p.reciprocal() - q.reciprocal())
    return [CheckRecord(f"Holder ||x||_{q} <= ||x||_{p}", xq, xp, tol),
            CheckRecord(f"Holder ||x||_{p} <= n^(1/p-1/q) ||x||_{q}", xp, growth * xq, tol)]


def symmetric_eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending by magnitude) and eigenvectors of a symmetric matrix.

    Uses the Jacobi SVD: for symmetric ``A = U S V^T`` each eigenvalue is
    ``s_i`` signed by ``u_i . v_i``.
    """
    a = as_matrix(a, "A")
    if a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    sym = 0.5 * (a + a.T)
    dec = svd(sym)
    v = dec.vt.T
    signs = np.sign(np.einsum("ij,ij->j", dec.u, v))
    signs[signs == 0] = 1.0
    return dec.s.values * signs, v


def make_spectral_approx(a, eps: float, seed: int | None = None,
                         diag: np.ndarray | None = None) -> np.ndarray:
    """Random ``eps``-spectral approximation ``R (I + D) R^T`` of a PSD matrix ``A = R R^T``.

    ``R`` is the symmetric square root of ``A`` and ``D`` is diagonal with
    entries uniform on ``[-eps, eps]`` (or ``diag`` if given), so
    ``(1 - eps) A <= result <= (1 + eps) A`` by congruence.
    """
    a = as_matrix(a, "A")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if a.shape[0] != a.shape[1] or np.max(np.abs(a - a.T)) > PSD_TOL * max(np.max(np.abs(a)), 1e-300):
        raise ValueError("A must be symmetric")
    lam, v = symmetric_eigh(a)
    top = float(np.max(np.abs(lam)))
    if lam.min() < -PSD_TOL * top:
        raise ValueError(f"A is not PSD: smallest eigenvalue {lam.min():.3e}")
    root = (v * np.sqrt(np.clip(lam, 0.0, None))) @ v.T
    n = a.shape[0]
    if diag is None:
        diag = np.random.Generator(np.random.PCG64(seed)).uniform(-eps, eps, size=n)
    diag = np.asarray(diag, dtype=np.float64)
    if diag.shape != (n,) or np.max(np.abs(diag)) > eps:
        raise ValueError("diag must have length n and entries within [-eps, eps]")
    approx = (root * (1.0 + diag)) @ root.T
    return 0.5 * (approx + approx.T)


def random_laplacian(n: int, seed: int, density: float = 0.3) -> np.ndarray:
    """Weighted Laplacian of a random graph: Erdos-Renyi edges plus a spanning path."""
    rng = np.random.Generator(np.random.PCG64(seed))
    w = np.triu(rng.uniform(0.1, 1.0, (n, n)) * (rng.random((n, n)) < density), 1)
    idx = np.arange(n - 1)
    w[idx, idx + 1] = rng.uniform(0.1, 1.0, n - 1)
    w = w + w.T
    return np.diag(w.sum(axis=1)) - w


def check_spectral_to_schatten(a, a_cand, eps: float, ps: Sequence[ExponentLike],
                               tol: float = SPECTRAL_TOL) -> VerificationReport:
    """For each ``p``: ``||A_cand - A||_p <= eps ||A||_p``."""
    a = as_matrix(a, "A")
    a_cand = as_matrix(a_cand, "A_cand")
    _same_shape(a, a_cand)
    s_a = singular_values(a)
    s_diff = singular_values(a_cand - a)
    report = VerificationReport(instance={"n": a.shape[0], "eps": eps})
    for p in ps:
        p = exponent(p)
        report.checks.append(CheckRecord(f"spectral->Schatten S_{p}",
                                         schatten_norm(s_diff, p),
                                         eps * schatten_norm(s_a, p), tol))
    return report
