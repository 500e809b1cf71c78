import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from flowpoly.graphmat import SpinalGraph, ZeroOneMatrix, complete_graph  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def ex_graph():
    return SpinalGraph(5, ((1, 3), (1, 4), (2, 3), (3, 5), (3, 5), (4, 5)))


@pytest.fixture
def ex_matrix():
    return ZeroOneMatrix.from_text("110000\n111000\n010110\n000111\n")


@pytest.fixture
def nn_graph():
    return SpinalGraph(5, ((1, 2), (1, 3), (2, 4), (2, 4), (3, 5), (3, 5), (4, 5)))


@pytest.fixture
def k7():
    return complete_graph(7)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
