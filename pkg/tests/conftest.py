import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from jcalc.words import Endomorphism, ReducedWord, parse_word  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "examples_data"


def letters(rank):
    return st.integers(1, rank).flatmap(lambda i: st.sampled_from([i, -i]))


def raw_codes(rank, max_len=20):
    """Arbitrary (not necessarily reduced) letter sequences."""
    return st.lists(letters(rank), max_size=max_len)


def words(rank, max_len=20):
    return raw_codes(rank, max_len).map(lambda c: ReducedWord(rank, c))


@pytest.fixture
def psi():
    return Endomorphism([parse_word("x1 x2 x1 x2^-1 x1^-1", 2), parse_word("x2", 2)])


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
