import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from arrlab.graph import build  # noqa: E402


@pytest.fixture(scope="session")
def a42():
    return build(4, 2)


@pytest.fixture(scope="session")
def a53():
    return build(5, 3)


@pytest.fixture(scope="session")
def a54():
    return build(5, 4)


@pytest.fixture(scope="session")
def a64():
    return build(6, 4)


def vid(g, compact):
    """Vertex id from the figure's compact notation, e.g. '12' for (1, 2)."""
    return g.index(tuple(int(c) for c in compact))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
