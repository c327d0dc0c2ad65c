import itertools
import sys

import pytest
from hypothesis import strategies as st

from lawson_lab.core import Element


def dense(x: Element, length: int) -> tuple[int, ...]:
    """Total-function view of ``x`` on ``[0, length)``."""
    d = [2] * length
    for c, v in x.entries:
        d[c] = v
    return tuple(d)


def from_dense(values) -> Element:
    return Element.from_mapping(dict(enumerate(values)))


def all_dense(length: int):
    """Every trit tuple of the given length, via itertools (independent of core)."""
    return itertools.product((0, 1, 2), repeat=length)


def elements(max_coord: int = 8):
    return st.dictionaries(
        st.integers(min_value=0, max_value=max_coord), st.sampled_from([0, 1, 2]), max_size=max_coord + 1
    ).map(Element.from_mapping)


@pytest.fixture(scope="session")
def x4():
    return [from_dense(t) for t in all_dense(4)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
