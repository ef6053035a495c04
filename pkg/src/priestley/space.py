"""Ordered spaces: presentations and their separation/continuity classifiers.

Checks on tail carriers are run over *representatives*: every named point and,
in every block, all indices up to the support bound of the sets involved plus
two generic indices beyond it.  A finite permutation of block indices that
fixes the support preserves the order, the clopen algebra and every set in
play, so two generic points of one block are interchangeable; a statement
quantifying over at most two points of a block is therefore decided by the
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .order import OrderPresentation, validate_order
from .setalg import (
    Carrier, Point, RSet, closure, is_clopen, is_closed, is_compact, is_open, support_bound,
)
from .verdict import InvalidInput, Verdict


@dataclass(frozen=True)
class SpacePresentation:
    carrier: Carrier
    order: OrderPresentation

    @classmethod
    def build(cls, carrier: Carrier, rectangles: Iterable[tuple[RSet, RSet]] = ()) -> "SpacePresentation":
        verdict, closed = validate_order(OrderPresentation(carrier, tuple(rectangles)))
        if not verdict:
            raise InvalidInput(f"order is not antisymmetric: {verdict.witness}")
        return cls(carrier, closed)

    @classmethod
    def finite_poset(cls, points: int | Iterable[str], pairs: Iterable[tuple] = ()) -> "SpacePresentation":
        c = Carrier.finite(points)
        verdict, closed = validate_order(OrderPresentation.from_pairs(c, pairs))
        if not verdict:
            raise InvalidInput(f"order is not antisymmetric: {verdict.witness}")
        return cls(c, closed)

    # convenience pass-throughs

    def leq(self, x: Point, y: Point) -> bool:
        return self.order.leq(x, y)

    def up(self, x: Point) -> RSet:
        return self.order.up(x)

    def down(self, x: Point) -> RSet:
        return self.order.down(x)

    def upclose(self, s: RSet) -> RSet:
        return self.order.upclose(s)

    def downclose(self, s: RSet) -> RSet:
        return self.order.downclose(s)

    def set(self, points: Iterable[Point]) -> RSet:
        return RSet.of(self.carrier, points)

    @property
    def full(self) -> RSet:
        return RSet.full(self.carrier)

    @property
    def empty(self) -> RSet:
        return RSet.empty(self.carrier)

    @property
    def is_finite(self) -> bool:
        return self.carrier.is_finite

    @cached_property
    def fin(self) -> "FiniteView":
        return FiniteView(self)


class FiniteView:
    """Plain-set view of a finite space for exhaustive sweeps."""

    def __init__(self, space: SpacePresentation):
        self.space = space
        self.points = space.carrier.points()
        self.index = {p: i for i, p in enumerate(self.points)}
        self.up = {p: frozenset(space.up(p)) for p in self.points}
        self.down = {p: frozenset(q for q in self.points if p in self.up[q]) for p in self.points}
        self.n = len(self.points)

    def leq(self, x, y) -> bool:
        return y in self.up[x]

    def upclose(self, s) -> frozenset:
        return frozenset().union(*(self.up[x] for x in s))

    def downclose(self, s) -> frozenset:
        return frozenset().union(*(self.down[x] for x in s))

    @cached_property
    def upsets(self) -> list[frozenset]:
        """All upsets, ordered by size then by sorted point positions."""
        masks = [sum(1 << self.index[q] for q in self.up[p]) for p in self.points]
        out = []
        for m in range(1 << self.n):
            if all(not (m >> i) & 1 or (m & masks[i]) == masks[i] for i in range(self.n)):
                out.append(frozenset(self.points[i] for i in range(self.n) if (m >> i) & 1))
        out.sort(key=lambda s: (len(s), sorted(self.index[p] for p in s)))
        return out


# representatives

def generic_bound(space: SpacePresentation, *extra: RSet) -> int:
    return support_bound(*space.order.support_sets(), *extra)


def representatives(space: SpacePresentation, *extra: RSet, bound: int | None = None) -> list[Point]:
    m = generic_bound(space, *extra) if bound is None else bound
    reps: list[Point] = list(space.carrier.named)
    for b in space.carrier.blocks:
        reps.extend((b.name, k) for k in range(m + 3))
    return reps


def basic_open_family(space: SpacePresentation, bound: int) -> list[RSet]:
    """Whole blocks, smallest representative limit neighbourhoods, and singletons."""
    c = space.carrier
    fam = [RSet.block(c, b.name, with_limit=b.limit is not None) for b in c.blocks]
    fam += [RSet.tail(c, b.name, bound + 3) | RSet.of(c, [b.limit]) for b in c.blocks if b.limit]
    fam += [RSet.of(c, [p]) for p in representatives(space, bound=bound) if p not in c.limits]
    return fam


def neighbourhoods(space: SpacePresentation, p: Point, bound: int) -> RSet:
    """Smallest representative basic clopen neighbourhood of ``p``."""
    c = space.carrier
    blk = c.block_of_limit(p) if isinstance(p, str) else None
    if blk is None:
        return RSet.of(c, [p])
    return RSet.tail(c, blk.name, bound + 3) | RSet.of(c, [p])


# hulls

def _hull(space: SpacePresentation, lower: RSet, upper: RSet, up: bool,
          context: Iterable[RSet] = ()) -> RSet | None:
    close = space.upclose if up else space.downclose
    c = space.carrier
    m = generic_bound(space, lower, upper, *context)
    cur = close(lower)
    for _ in range(2 * len(c.blocks) + 2):
        if not cur <= upper:
            return None
        grown = cur
        for b, t in zip(c.blocks, cur.traces):
            if b.limit is None:
                continue
            if b.limit in cur.points and not t.cofinite:
                grown = grown | RSet.tail(c, b.name, m + 1)
            elif t.cofinite and b.limit not in cur.points:
                grown = grown | RSet.of(c, [b.limit])
        if grown == cur:
            return cur
        cur = close(grown)
    raise AssertionError("hull iteration did not stabilise")


def clopen_upset_between(space: SpacePresentation, lower: RSet, upper: RSet | None = None,
                         context: Iterable[RSet] = ()) -> RSet | None:
    """A clopen upset ``U`` with ``lower ⊆ U ⊆ upper``, or None if there is none.

    ``upper`` must be an upset.  The result is least up to block points that
    are generic for ``lower``, ``upper`` and ``context``.
    """
    return _hull(space, lower, space.full if upper is None else upper, True, context)


def clopen_downset_between(space: SpacePresentation, lower: RSet, upper: RSet | None = None,
                           context: Iterable[RSet] = ()) -> RSet | None:
    return _hull(space, lower, space.full if upper is None else upper, False, context)


# classifiers

def check_priestley_separation(space: SpacePresentation) -> Verdict:
    reps = representatives(space)
    tested = 0
    for x in reps:
        upx = space.up(x)
        for y in reps:
            if y in upx:
                continue
            tested += 1
            if clopen_upset_between(space, upx, ~space.down(y)) is None:
                return Verdict.fail((x, y), tested)
    return Verdict.ok(tested, exhaustive=space.is_finite)


def check_order_continuity(space: SpacePresentation) -> dict[str, Verdict]:
    reps = representatives(space)
    m = generic_bound(space)
    out = {}
    bad = next((x for x in reps if not is_closed(space, space.up(x))), None)
    out["upsets_closed"] = Verdict.ok(len(reps), space.is_finite) if bad is None else Verdict.fail(bad)
    fam = basic_open_family(space, m)
    bad = next((u for u in fam if not is_open(space, space.downclose(u))), None)
    out["down_of_open_open"] = Verdict.ok(len(fam), space.is_finite) if bad is None else Verdict.fail(bad)
    return out


def is_continuously_ordered(space: SpacePresentation) -> bool:
    return all(check_order_continuity(space).values())


def check_image_compact(space: SpacePresentation) -> Verdict:
    reps = representatives(space)
    for x in reps:
        if not is_compact(space, space.up(x)):
            return Verdict.fail(x, len(reps))
    return Verdict.ok(len(reps), space.is_finite)


def check_clopen_upset_basis(space: SpacePresentation) -> Verdict:
    """Differences of clopen upsets form a basis: each point has U \\ V inside each basic neighbourhood."""
    m = generic_bound(space)
    reps = representatives(space)
    for p in reps:
        n = neighbourhoods(space, p, m)
        u = clopen_upset_between(space, RSet.of(space.carrier, [p]), context=[n])
        v = clopen_upset_between(space, u - n, ~space.down(p))
        if v is None:
            return Verdict.fail((p, n), len(reps))
    return Verdict.ok(len(reps), space.is_finite)


def is_compact_space(space: SpacePresentation) -> bool:
    return all(b.limit is not None for b in space.carrier.blocks)


def is_order_closed(space: SpacePresentation) -> Verdict:
    """The order is closed in X × X: each rectangle's closure stays inside the order."""
    for a, b in space.order.rectangles:
        ca, cb = closure(space, a), closure(space, b)
        for p in (ca - a).points:
            if not cb <= space.up(p):
                return Verdict.fail((p, (cb - space.up(p)).pick()))
        for q in (cb - b).points:
            if not ca <= space.down(q):
                return Verdict.fail(((ca - space.down(q)).pick(), q))
    return Verdict.ok(len(space.order.rectangles))


def is_nachbin(space: SpacePresentation) -> bool:
    return is_compact_space(space) and bool(is_order_closed(space))


def classify_space(space: SpacePresentation) -> dict:
    return dict(_classify(space))


@lru_cache(maxsize=4096)
def _classify(space: SpacePresentation) -> dict:
    compact = is_compact_space(space)
    sep = check_priestley_separation(space)
    cont = check_order_continuity(space)
    image_compact = check_image_compact(space)
    ozd = bool(sep) and bool(check_clopen_upset_basis(space))
    co = all(cont.values())
    return {
        "compact": compact,
        "priestley": compact and bool(sep),
        "continuously_ordered": co,
        "esakia": compact and bool(sep) and co,
        "order_zero_dimensional": ozd,
        "image_compact": bool(image_compact),
        "locally_esakia": ozd and co and bool(image_compact),
    }


def classify_report(space: SpacePresentation) -> dict:
    """Flags plus the verdicts behind them."""
    return {
        "flags": classify_space(space),
        "separation": check_priestley_separation(space),
        "continuity": check_order_continuity(space),
        "image_compact": check_image_compact(space),
        "basis": check_clopen_upset_basis(space),
        "order_closed": is_order_closed(space),
    }


def clopen_upsets_finite(space: SpacePresentation) -> list[RSet]:
    return [RSet.of(space.carrier, u) for u in space.fin.upsets]


__all__ = [
    "SpacePresentation", "FiniteView", "representatives", "generic_bound", "basic_open_family",
    "clopen_upset_between", "clopen_downset_between", "check_priestley_separation",
    "check_order_continuity", "is_continuously_ordered", "check_image_compact",
    "check_clopen_upset_basis", "is_compact_space", "is_order_closed", "is_nachbin",
    "classify_space", "classify_report", "clopen_upsets_finite", "is_clopen",
]
