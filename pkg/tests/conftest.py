import sys
import numpy as np
import pytest

from annulus.greens import annulus
from annulus.sampling import DEFAULT_SEED


@pytest.fixture(scope="session")
def dom2():
    return annulus(2.0)


@pytest.fixture(scope="session")
def dom4():
    return annulus(4.0)


@pytest.fixture
def rng():
    return np.random.default_rng(DEFAULT_SEED)


def rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
