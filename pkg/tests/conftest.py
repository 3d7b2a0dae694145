from functools import lru_cache

import pytest

from trinim.core import GameStore
from trinim.enumeration import universe


@pytest.fixture
def store():
    return GameStore()


@pytest.fixture(scope="session")
def day4_store():
    """Shared store with the day-4 universe built (about a second)."""
    s = GameStore()
    universe(s, 4)
    return s


# Structural games as nested frozensets: an oracle for identity that never
# touches the interning store.

@lru_cache(maxsize=None)
def fs_heap(n):
    return frozenset(fs_heap(k) for k in range(n))


@lru_cache(maxsize=None)
def fs_sum(a, b):
    return frozenset({fs_sum(x, b) for x in a} | {fs_sum(a, y) for y in b})


def fs_closure(g):
    seen = {g}
    stack = [g]
    while stack:
        for o in stack.pop():
            if o not in seen:
                seen.add(o)
                stack.append(o)
    return seen


def fs_of(store, g):
    """Frozenset form of an interned game."""
    return frozenset(fs_of(store, o) for o in store.options(g))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
