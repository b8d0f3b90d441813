import numpy as np
import pytest

from tprf.ladder import LadderParams, mhz

ALPHA = mhz(-233.0)
GAMMA = mhz(2.5)

_ACCEPTANCE_LINES = []


def params3(epsilon=0.0, delta=0.0, gamma=GAMMA, n_levels=3):
    return LadderParams(n_levels, ALPHA, delta, epsilon * abs(ALPHA), gamma)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def acceptance_report():
    """Collects one PASS/FAIL line per acceptance check for the terminal summary."""
    def record(criterion, ok, detail):
        _ACCEPTANCE_LINES.append(f"[criterion {criterion:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_density_matrix(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real
