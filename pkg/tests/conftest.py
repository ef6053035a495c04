import random
import sys

import pytest
from hypothesis import strategies as st

from priestley.corpus import fig2_pair, fig2_space, naturals, poset_space
from priestley.setalg import Carrier, RSet, Trace

# one block with a limit, one without, two isolated points
MIXED = Carrier.tail([("A", "a"), ("B", None)], ["p", "q"])
PROBE = 12


def traces(max_index=6):
    return st.builds(Trace, st.booleans(), st.frozensets(st.integers(0, max_index), max_size=4))


def rsets(carrier=MIXED):
    return st.builds(
        lambda ts, pts: RSet(carrier, tuple(ts), frozenset(pts)),
        st.lists(traces(), min_size=len(carrier.blocks), max_size=len(carrier.blocks)),
        st.sets(st.sampled_from(carrier.named)) if carrier.named else st.just(set()),
    )


def members(s: RSet, probe=PROBE) -> set:
    """Pointwise membership oracle over a finite window plus the named points."""
    out = {p for p in s.carrier.named if p in s}
    for b in s.carrier.blocks:
        out |= {(b.name, k) for k in range(probe) if (b.name, k) in s}
    return out


@st.composite
def posets(draw, max_n=6, min_n=0):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    p = rng.random()
    order = list(range(n))
    rng.shuffle(order)
    rel = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    return poset_space(n, rel)


@pytest.fixture
def fig2():
    return fig2_pair()


@pytest.fixture
def fig2_y():
    return fig2_space()


@pytest.fixture
def nat():
    return naturals()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
