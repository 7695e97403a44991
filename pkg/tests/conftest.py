import os

import pytest

from hurwitz.branch_data import BranchDatum, orientable, SPHERE

# small budgets keep a runaway search from hanging the suite
os.environ.setdefault("HURWITZ_BUDGET", str(10**8))


def datum(genus, *parts, base=SPHERE):
    parts = [tuple(p) for p in parts]
    return BranchDatum(orientable(genus), base, sum(parts[0]), tuple(parts))


@pytest.fixture
def make_datum():
    return datum


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
