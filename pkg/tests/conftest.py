import numpy as np
import pytest

from lieshape.synthetic import rng as seeded_rng

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return seeded_rng()


@pytest.fixture
def acceptance_log():
    def log(criterion, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return log


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
