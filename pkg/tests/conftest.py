import sys
import random
from fractions import Fraction

import pytest


def F(x, y=1):
    return Fraction(x, y)


def swap_matrix(p):
    """[[0, p], [1/p, 0]]: an involution whose scale is 1 but which moves Z_p^2."""
    return ((F(0), F(p)), (F(1, p), F(0)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
