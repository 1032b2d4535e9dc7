import random

import pytest

from semicech.generate import (
    HALF,
    cycle_scenario,
    deterministic_model,
    fully_mixed,
    hardy_model,
    mix,
    pr_box,
    random_sweep,
    table1_model,
)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def square():
    return cycle_scenario(4)


@pytest.fixture(scope="session")
def triangle():
    return cycle_scenario(3)


@pytest.fixture(scope="session")
def table1():
    return table1_model()


@pytest.fixture(scope="session")
def prbox():
    return pr_box()


@pytest.fixture(scope="session")
def hardy():
    return hardy_model()


@pytest.fixture(scope="session")
def det(square):
    return deterministic_model(square)


@pytest.fixture(scope="session")
def uniform(square):
    return fully_mixed(square)


@pytest.fixture(scope="session")
def pr_uniform(prbox, uniform):
    return mix(prbox, uniform, HALF, "pr_uniform_mix")


@pytest.fixture(scope="session")
def sweep():
    """The seeded random population shared by the cross-check tests."""
    return random_sweep(2024, 200)


# One line per acceptance criterion, repeated in the terminal summary so
# the outcome is visible even when test output is captured.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
