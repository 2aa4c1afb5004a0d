import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from schatten_sparsify.matrices import all_ones, hadamard, identity
from schatten_sparsify.spectra import (INF, ZERO, SchattenExponent, Spectrum, exponent, lp_norm,
                                       numerical_rank, schatten_norm, schatten_power,
                                       singular_values, svd)

from conftest import oracle_schatten, oracle_sv

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_exponent_parsing():
    assert exponent("inf") == INF
    assert exponent("0") == ZERO
    assert exponent(2).value == 2.0
    assert str(INF) == "inf" and str(exponent(1.5)) == "1.5"
    assert INF.reciprocal() == 0.0
    with pytest.raises(ValueError):
        SchattenExponent(513)
    with pytest.raises(ValueError):
        SchattenExponent(-1)
    with pytest.raises(ValueError):
        ZERO.reciprocal()


def test_spectrum_invariants():
    with pytest.raises(ValueError):
        Spectrum(np.array([1.0, 2.0]), (2, 2))
    with pytest.raises(ValueError):
        Spectrum(np.array([1.0]), (2, 2))


def test_diagonal_and_named_spectra():
    assert np.allclose(singular_values(np.diag([3.0, 4.0])).values, [4, 3])
    assert np.allclose(singular_values(hadamard(3)).values, math.sqrt(8), rtol=1e-14)
    assert np.allclose(singular_values(all_ones(4)).values, [4, 0, 0, 0], atol=1e-14)


def test_norm_examples():
    assert schatten_norm(identity(16), 2) == pytest.approx(4.0, rel=1e-14)
    assert schatten_norm(all_ones(4), 1) == pytest.approx(4.0, rel=1e-14)
    assert schatten_norm(all_ones(4), 2) == pytest.approx(4.0, rel=1e-14)
    assert schatten_norm(hadamard(4), INF) == pytest.approx(4.0, rel=1e-14)


def test_rank_examples():
    assert numerical_rank(all_ones(4)) == 1
    assert numerical_rank(identity(7)) == 7
    assert schatten_norm(all_ones(4), ZERO) == 1.0


def test_zero_matrix():
    s = singular_values(np.zeros((3, 5)))
    assert np.array_equal(s.values, np.zeros(3))
    assert schatten_norm(s, 2) == 0.0 and numerical_rank(s) == 0


def test_large_exponent_does_not_overflow():
    a = np.diag([1e200, 1e200])
    assert schatten_norm(a, 512) == pytest.approx(1e200 * 2 ** (1 / 512))


def test_schatten_power():
    assert schatten_power(np.diag([1.0, 2.0]), 2) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        schatten_power(np.eye(2), INF)


def test_lp_norm():
    x = np.array([3.0, -4.0, 0.0])
    assert lp_norm(x, 2) == pytest.approx(5.0)
    assert lp_norm(x, INF) == 4.0
    assert lp_norm(x, ZERO) == 2.0


@pytest.mark.parametrize("shape", [(1, 1), (1, 7), (7, 1), (5, 9), (9, 5), (32, 32), (64, 40)])
def test_matches_lapack(shape, rng):
    a = rng.standard_normal(shape)
    s = singular_values(a).values
    ref = oracle_sv(a)
    assert np.allclose(s, ref, rtol=0, atol=1e-12 * ref[0])


def test_factorization_reconstructs(rng):
    a = rng.standard_normal((12, 7))
    d = svd(a)
    assert np.allclose(d.u @ np.diag(d.s.values) @ d.vt, a, atol=1e-12)
    assert np.allclose(d.vt @ d.vt.T, np.eye(7), atol=1e-12)
    assert np.allclose(d.u.T @ d.u, np.eye(7), atol=1e-12)


def test_rank_deficient_input(rng):
    a = rng.standard_normal((20, 3)) @ rng.standard_normal((3, 15))
    assert numerical_rank(a) == 3
    assert np.allclose(singular_values(a).values, oracle_sv(a), atol=1e-12 * oracle_sv(a)[0])


def test_eigen_residual(rng):
    a = rng.standard_normal((24, 24))
    d = svd(a)
    s1 = d.s.max
    ata = a.T @ a
    for sigma, v in zip(d.s.values, d.vt):
        assert np.linalg.norm(ata @ v - sigma ** 2 * v) <= 1e-8 * s1 ** 2


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 8), st.integers(1, 8)), elements=finite))
def test_frobenius_and_transpose(a):
    s = singular_values(a).values
    assert np.sum(s ** 2) == pytest.approx(np.sum(a * a), rel=1e-12, abs=1e-12)
    assert np.allclose(s, singular_values(a.T).values, atol=1e-12 * max(s[0], 1.0))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2 ** 32 - 1))
def test_orthogonal_invariance(n, seed):
    r = np.random.default_rng(seed)
    a = r.standard_normal((n, n))
    q, _ = np.linalg.qr(r.standard_normal((n, n)))
    for p in (1, 2.5, INF):
        assert schatten_norm(q @ a, p) == pytest.approx(schatten_norm(a, p), rel=1e-11)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2 ** 32 - 1))
def test_norms_agree_with_oracle_and_are_monotone_in_p(n, seed):
    a = np.random.default_rng(seed).standard_normal((n, n + 1))
    values = [schatten_norm(a, p) for p in (1, 2, 3, 8, INF)]
    for p, v in zip((1, 2, 3, 8, np.inf), values):
        assert v == pytest.approx(oracle_schatten(a, p), rel=1e-11)
    assert all(x >= y * (1 - 1e-12) for x, y in zip(values, values[1:]))
