from itertools import product

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from priestley.order import OrderPresentation, transitive_closure, validate_order
from priestley.setalg import Carrier, RSet

from conftest import MIXED, members, rsets

Y = Carrier.tail([("N", "inf")])
FIG2 = OrderPresentation(Y, ((RSet.block(Y, "N"), RSet.of(Y, ["inf"])),))


def n(*idx):
    return RSet.of(Y, [("N", k) for k in idx])


def test_discrete_order_is_valid():
    v, closed = validate_order(OrderPresentation.discrete(Y))
    assert v and closed.rectangles == ()
    assert not closed.leq(("N", 0), ("N", 1))


def test_fig2_rectangle_is_valid_and_fixed():
    v, closed = validate_order(FIG2)
    assert v
    assert closed.rectangles == FIG2.rectangles


def test_antisymmetry_violation():
    c = Carrier.finite(["a", "b"])
    v, closed = validate_order(OrderPresentation.from_pairs(c, [("a", "b"), ("b", "a")]))
    assert not v and closed is None
    assert set(v.witness) == {"a", "b"}


def test_leq_examples():
    assert FIG2.leq(("N", 5), ("N", 5))
    assert FIG2.leq(("N", 5), "inf")
    assert not FIG2.leq("inf", ("N", 5))


def test_closures_in_fig2():
    assert FIG2.upclose(RSet.empty(Y)) == RSet.empty(Y)
    assert FIG2.upclose(n(5)) == n(5) | RSet.of(Y, ["inf"])
    assert FIG2.downclose(RSet.of(Y, ["inf"])) == RSet.full(Y)


def test_upset_examples():
    assert FIG2.is_upset(RSet.empty(Y)) and FIG2.is_upset(RSet.full(Y))
    assert FIG2.is_upset(RSet.block(Y, "N", True, [0, 1], with_limit=True))
    assert FIG2.is_upset(RSet.of(Y, ["inf"]))
    assert not FIG2.is_upset(n(5))


def test_transitive_closure_composes_rectangles():
    c = Carrier.finite(["a", "b", "c"])
    p = transitive_closure(OrderPresentation.from_pairs(c, [("a", "b"), ("b", "c")]))
    assert p.leq("a", "c") and not p.leq("c", "a")


def _floyd(n, rel):
    le = {(i, i) for i in range(n)} | set(rel)
    for k, i, j in product(range(n), repeat=3):
        if (i, k) in le and (k, j) in le:
            le.add((i, j))
    return le


@settings(max_examples=150)
@given(st.integers(0, 6), st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=10))
def test_finite_closure_matches_brute_force(n, rel):
    rel = {(a, b) for a, b in rel if a < n and b < n and a != b}
    c = Carrier.finite(n)
    names = c.points()
    v, closed = validate_order(OrderPresentation.from_pairs(c, [(names[a], names[b]) for a, b in rel]))
    le = _floyd(n, rel)
    antisym = all(not ((i, j) in le and (j, i) in le) for i in range(n) for j in range(n) if i != j)
    assert bool(v) == antisym
    if antisym:
        for i, j in product(range(n), repeat=2):
            assert closed.leq(names[i], names[j]) == ((i, j) in le)
        for mask in range(1 << n):
            s = RSet.of(c, [names[i] for i in range(n) if mask >> i & 1])
            want = {names[j] for i in range(n) if mask >> i & 1 for j in range(n) if (i, j) in le}
            assert set(closed.upclose(s)) == want


@settings(max_examples=150, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.lists(st.tuples(rsets(), rsets()), max_size=3), rsets())
def test_tail_closure_matches_window_oracle(rects, s):
    v, closed = validate_order(OrderPresentation(MIXED, tuple(rects)))
    assume(v)
    window = sorted(members(RSet.full(MIXED)), key=str)
    up = closed.upclose(s)
    want = {y for x in members(s) for y in window if closed.leq(x, y)}
    assert members(up) == want
    assert closed.is_upset(up) and closed.is_downset(closed.downclose(s))
    # transitivity on the window
    for x in window:
        for y in members(closed.up(x)):
            assert closed.up(y) <= closed.up(x)
