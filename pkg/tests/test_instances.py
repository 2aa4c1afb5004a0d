import json
import math

import numpy as np
import pytest

from schatten_sparsify.instances import (EPS0, build_case1, build_case2, build_case3,
                                         build_case4, build_instance, load_instance,
                                         save_instance, vector_counterexample)
from schatten_sparsify.matrices import nnz
from schatten_sparsify.spectra import INF, ZERO, numerical_rank

from conftest import oracle_schatten, oracle_sv


@pytest.fixture(scope="module")
def case1():
    return build_case1(8, 1, 4)


def test_case1_shapes_and_analytic_values(case1):
    n = 256
    assert case1.n == n and case1.B.shape == (n, n)
    assert np.array_equal(case1.A, case1.A_prime + case1.B)
    assert nnz(case1.A_prime) == n
    assert case1.expected.p2_ratio == pytest.approx(8 ** -1.5, rel=1e-14)
    assert case1.eps_threshold == case1.expected.p2_ratio
    assert case1.groups == tuple((64 * i, 64 * (i + 1)) for i in range(4))
    assert not case1.degenerate and case1.eps0 == EPS0


def test_case1_spectra_against_oracle(case1):
    s = oracle_sv(case1.B)
    assert np.allclose(s[:4], 128, rtol=1e-12)
    assert np.all(s[4:] < 1e-9)
    ap_q = oracle_schatten(case1.A_prime, 4)
    assert ap_q == pytest.approx(oracle_schatten(case1.B, 4), rel=1e-12)
    assert ap_q == pytest.approx(case1.expected.q_norm, rel=1e-12)
    assert np.sum(case1.B ** 2) == 256 ** 2


def test_case1_ranks(case1):
    assert numerical_rank(case1.B) == 4
    assert numerical_rank(case1.A) == 256


def test_case1_degenerate_at_small_k():
    inst = build_case1(4, 1, 4)
    assert inst.degenerate
    assert numerical_rank(inst.B) == 1


def test_case1_rejects_bad_parameters():
    with pytest.raises(ValueError, match="power of 2"):
        build_case1(3, 1, 4)
    with pytest.raises(ValueError):
        build_case1(8, 1, 1.5)
    with pytest.raises(ValueError):
        build_case1(8, 4, 4)


def test_case2_values():
    inst = build_case2(8, 4, 2)
    assert nnz(inst.A_prime) == 1
    s = oracle_sv(inst.B)
    assert np.allclose(s, 256 ** -0.5, rtol=1e-12)
    assert inst.expected.p2_ratio == pytest.approx(0.25, rel=1e-14)
    assert oracle_schatten(inst.B, 2) == pytest.approx(1.0, rel=1e-12)
    assert build_case2(4, 4, 2).eps_threshold == pytest.approx(0.5, rel=1e-14)


def test_case3_values():
    inst = build_case3(8, 1, 2)
    assert inst.expected.p2_ratio == pytest.approx(0.0625, rel=1e-14)
    assert inst.expected.q_norm == pytest.approx(16.0, rel=1e-14)
    assert oracle_schatten(inst.B, 2) == pytest.approx(16.0, rel=1e-12)
    assert numerical_rank(inst.B) == 1


def test_case3_accepts_rank_exponent():
    inst = build_case3(6, ZERO, 1)
    assert inst.expected.p2_ratio == pytest.approx(1 / 64)


def test_case4_values():
    inst = build_case4(8, 2, 1)
    assert nnz(inst.B) == 8192
    s = oracle_sv(inst.B)
    assert np.allclose(s[:8], 1 / 8, rtol=1e-12)
    assert np.all(s[8:] < 1e-12)
    assert inst.expected.q_norm == 1.0
    assert inst.eps_threshold == pytest.approx(8 ** -0.5, rel=1e-14)
    assert len(inst.groups) == 8


def test_dispatch_and_case_errors():
    assert build_instance(3, 4, 1, 2).case_id == 3
    with pytest.raises(ValueError):
        build_instance(5, 4, 1, 2)
    with pytest.raises(ValueError):
        build_case4(8, 1, 2)


def test_vector_counterexample():
    x = vector_counterexample(16, 2)
    assert x[0] == 1.0 and np.allclose(x[1:], 0.25)
    with pytest.raises(ValueError):
        vector_counterexample(16, INF)


def test_save_load_round_trip(tmp_path):
    inst = build_case2(4, 4, 2)
    save_instance(inst, tmp_path)
    meta = json.loads((tmp_path / "instance.json").read_text())
    assert meta["eps_threshold"] == "0.5"
    back = load_instance(tmp_path)
    for name in ("A_prime", "B", "A"):
        assert np.array_equal(getattr(back, name), getattr(inst, name))
    assert back.expected.p2_ratio == inst.expected.p2_ratio
    assert np.array_equal(back.expected.B_spectrum.values, inst.expected.B_spectrum.values)
    assert (back.case_id, back.p, back.q) == (2, inst.p, inst.q)


def test_instances_are_immutable():
    inst = build_case3(4, 1, 2)
    with pytest.raises(ValueError):
        inst.B[0, 0] = 1.0
