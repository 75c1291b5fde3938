import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from icopt.problem import example_problems  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def examples():
    return example_problems()


@pytest.fixture
def ex1(examples):
    return examples["example1"]


@pytest.fixture
def ex2(examples):
    return examples["example2"]


@pytest.fixture
def ex3(examples):
    return examples["example3"]


@pytest.fixture
def ex4(examples):
    return examples["example4"]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
