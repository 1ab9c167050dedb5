import numpy as np
import pytest

from sl2rigidity.corpus import load_entry

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fig8():
    return load_entry("fig8")


@pytest.fixture(scope="session")
def torus():
    return load_entry("torus")


@pytest.fixture(scope="session")
def free2():
    return load_entry("free2")


@pytest.fixture(scope="session")
def genus2():
    return load_entry("genus2")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
