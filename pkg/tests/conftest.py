import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kchio import Matrix  # noqa: E402

EXAMPLE_33 = [[1, -2, 3, 1], [4, 2, -1, 0], [0, 2, 1, 5], [-3, 3, 1, 2]]
SYSTEM_14 = [
    [1, 3, 5, 7, 9, 11],
    [2, 0, 0, 0, 0, 9],
    [3, 0, 5, 7, 0, 7],
    [4, 0, 6, 8, 0, 5],
    [5, 0, 0, 0, 0, 3],
    [6, 5, 4, 3, 2, 1],
]
RHS_14 = [1, -1, 1, -1, 1, -1]

ACCEPTANCE_LINES = []


@pytest.fixture
def example33():
    return Matrix(EXAMPLE_33)


@pytest.fixture
def system14():
    return Matrix(SYSTEM_14), list(RHS_14)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
