import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from knotscheme.diagram import parse_gauss  # noqa: E402

TREFOIL = "1o+ 2u+ 3o+ 1u+ 2o+ 3u+"
FIGURE_EIGHT = "1o+ 2u- 3o- 1u+ 4o+ 3u- 2o- 4u+"
HOPF = "1o+ 2u+\n1u+ 2o+"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def trefoil():
    return parse_gauss(TREFOIL)


@pytest.fixture
def figure_eight():
    return parse_gauss(FIGURE_EIGHT)


@pytest.fixture
def hopf():
    return parse_gauss(HOPF)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
