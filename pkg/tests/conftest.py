import random

import pytest

from ribbon_schober.ribbon_graph import RibbonGraph

ACCEPTANCE_LINES = []


def spider(m):
    return RibbonGraph.from_ccw({0: list(range(m))})


def one_loop(extra_external=False):
    ccw = [0, 1] + ([2] if extra_external else [])
    return RibbonGraph.from_ccw({0: ccw}, [(0, 1)])


def theta():
    return RibbonGraph.from_ccw({0: [0, 2, 4], 1: [1, 5, 3]}, [(0, 1), (2, 3), (4, 5)])


def two_loops_interleaved():
    return RibbonGraph.from_ccw({0: [0, 2, 1, 3]}, [(0, 1), (2, 3)])


def two_loops_nested():
    return RibbonGraph.from_ccw({0: [0, 1, 2, 3]}, [(0, 1), (2, 3)])


@pytest.fixture
def rng():
    return random.Random(20260419)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
