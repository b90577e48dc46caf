import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hkplane import Model  # noqa: E402

_ACCEPTANCE_LINES = []


@pytest.fixture
def m1():
    return Model(1.0)


@pytest.fixture
def m2():
    return Model(2.0)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    def record(number, passed, detail):
        status = "PASS" if passed else "FAIL"
        _ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {detail}")
        print(_ACCEPTANCE_LINES[-1])
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


LN2 = math.log(2.0)
