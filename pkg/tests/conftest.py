import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from syncbound.automaton import Automaton  # noqa: E402
from syncbound.corpus import CorpusSpec, cerny, generate  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def c3():
    return cerny(3)


@pytest.fixture
def const3():
    """Permutation letters a (3-cycle) and b (swap 0, 1) plus a constant letter c."""
    return Automaton([(1, 1, 0), (2, 0, 0), (0, 2, 0)])


def small_corpus(count_per=6, ns=range(4, 9), ms=(2, 3), seed=7):
    out = []
    for n in ns:
        for m in ms:
            spec = CorpusSpec("random", n, m, seed=seed + 1000 * n + 10 * m, count=count_per, sync_only=True)
            out.extend(A for _, A in generate(spec))
    return out


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()
