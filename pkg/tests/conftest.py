from functools import lru_cache

import numpy as np
import pytest

from relctx.reduced_states import LABELS, PaperSetup, boosted_reduced_density

SETUP = PaperSetup()
GRID = SETUP.grid()

# (number, name, passed, detail) rows written by tests/test_acceptance.py
ACCEPTANCE_LOG = []


@lru_cache(maxsize=None)
def _states():
    return SETUP.states(GRID)


@lru_cache(maxsize=None)
def paper_taus(zeta):
    states = _states()
    return tuple(boosted_reduced_density(states[k], zeta, GRID, SETUP.mass) for k in LABELS)


@pytest.fixture
def setup():
    return SETUP


@pytest.fixture
def grid():
    return GRID


@pytest.fixture
def states():
    return _states()


KET_UP = np.array([1, 0], dtype=complex)
KET_DOWN = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


def projector(ket):
    return np.outer(ket, ket.conj())


BB84 = [projector(k) for k in (KET_UP, KET_DOWN, KET_PLUS, KET_MINUS)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(ACCEPTANCE_LOG):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{verdict}] {number:>2}. {name}: {detail}")
