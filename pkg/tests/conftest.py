import numpy as np
import pytest


def oracle_sv(a):
    """Singular values from LAPACK, the independent reference."""
    return np.linalg.svd(np.asarray(a, dtype=float), compute_uv=False)


def oracle_schatten(a, p):
    s = oracle_sv(a)
    if np.isinf(p):
        return float(s.max())
    return float(np.sum(s ** p) ** (1.0 / p))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


def acceptance(name, ok, detail=""):
    """Record and print one criterion verdict, then assert it."""
    line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
