import sys
from pathlib import Path

import pytest

from tightclose.simplicial import SimplicialComplex

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


def load_fixture(name: str) -> SimplicialComplex:
    return SimplicialComplex.load(FIXTURES / f"{name}.txt")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = sorted(getattr(mod, "CRITERION_LINES", []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
