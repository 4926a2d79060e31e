import numpy as np
import pytest

from earthquake_lab import corpus
from earthquake_lab import envelope as env

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def simple_env():
    return env.build(corpus.simple_earthquake(1.0), 1024)


@pytest.fixture(scope="session")
def trig_env():
    f = corpus.trig_field(3)
    return f, env.build(f, 1024)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
