import numpy as np
import pytest

from qdistinguish.states import diag_state, pure_state

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def orthogonal_pair():
    return diag_state([1, 0, 0]), diag_state([0, 0.5, 0.5])


def block_states(n: int):
    """2/n on the first half of the diagonal, and on the second half."""
    half = n // 2
    p = np.r_[np.full(half, 2.0 / n), np.zeros(n - half)]
    return diag_state(p), diag_state(p[::-1])


def ket(*amps):
    return pure_state(np.asarray(amps, dtype=complex))
