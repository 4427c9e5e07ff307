import sys

import pytest

from z8dual.ecvector import Window
from z8dual.homs import enumerate_homs
from z8dual.subring import build_D


@pytest.fixture(scope="session")
def ring11():
    return build_D(Window(-1, 1))


@pytest.fixture(scope="session")
def homs11(ring11):
    return enumerate_homs(ring11)


@pytest.fixture(scope="session")
def ring00():
    return build_D(Window(0, 0))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
