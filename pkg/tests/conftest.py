import random

import pytest
from hypothesis import strategies as st

from ptolemy.numbers import Dyadic
from ptolemy.words import ALPHA, BETA, Word


@pytest.fixture
def rng():
    return random.Random(0)


letters = st.tuples(st.sampled_from((ALPHA, BETA)), st.sampled_from((1, -1)))


def words(max_len=10):
    return st.lists(letters, max_size=max_len).map(lambda ls: Word(tuple(ls)))


def dyadics(max_exp=12, bound=1 << 14):
    return st.builds(Dyadic, st.integers(-bound, bound), st.integers(0, max_exp))


def unit_dyadics(max_exp=12):
    """Dyadic points of [0, 1)."""
    return st.integers(0, max_exp).flatmap(
        lambda m: st.integers(0, (1 << m) - 1).map(lambda p: Dyadic(p, m)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
