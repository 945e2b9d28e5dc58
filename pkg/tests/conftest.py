import pytest

from h4matroid.autos import Symmetries
from h4matroid.matroid import H4Matroid

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def m() -> H4Matroid:
    return H4Matroid()


@pytest.fixture(scope="session")
def sym(m) -> Symmetries:
    return Symmetries(m)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
