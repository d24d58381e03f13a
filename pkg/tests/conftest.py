import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from multicore.data import karate  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

TABLE_S1_CORES = [
    {"1", "2", "3", "8", "14"},
    {"16", "24", "33", "34"},
    {"6", "7", "17"},
    {"26", "32"},
    {"27", "30"},
    {"5", "11"},
    {"4", "13"},
    {"25", "28"},
    {"9", "31"},
]
TABLE_S1_PERIPHERY = {"10", "12", "15", "18", "19", "20", "21", "22", "23", "29"}


@pytest.fixture(scope="session")
def karate_graph():
    return karate()


def labelled_cores(g, partition):
    L = g.vertex_labels
    return {frozenset(L[v] for v in c) for c in partition.cores}


def labelled_periphery(g, partition):
    return {g.vertex_labels[v] for v in partition.periphery}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
