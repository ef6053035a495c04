"""Maps between space presentations.

Named points are mapped one by one.  Each block carries a uniform rule, either
``("block", name)`` sending index ``k`` to index ``k`` of the named target block,
or ``("point", p)`` sending the whole block to ``p``; finitely many block points
may be overridden by exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .setalg import EMPTY_TRACE, FULL_TRACE, Point, RSet, Trace, is_clopen
from .space import SpacePresentation, basic_open_family, generic_bound, representatives
from .verdict import InvalidInput


@dataclass(frozen=True)
class SpaceMap:
    source: SpacePresentation
    target: SpacePresentation
    named: Mapping[str, Point] = field(default_factory=dict)
    rules: Mapping[str, tuple[str, str]] = field(default_factory=dict)
    exceptions: Mapping[tuple, Point] = field(default_factory=dict)

    def __post_init__(self):
        sc, tc = self.source.carrier, self.target.carrier
        missing = [p for p in sc.named if p not in self.named]
        if missing:
            raise InvalidInput(f"map undefined on {missing}")
        for p, q in self.named.items():
            sc.check_point(p)
            tc.check_point(q)
        for b in sc.blocks:
            rule = self.rules.get(b.name)
            if rule is None:
                raise InvalidInput(f"no rule for block {b.name!r}")
            kind, arg = rule
            if kind == "block":
                tc.block_index(arg)
            elif kind == "point":
                tc.check_point(arg)
            else:
                raise InvalidInput(f"unknown block rule {kind!r}")
        for p, q in self.exceptions.items():
            sc.check_point(p)
            tc.check_point(q)
            if not isinstance(p, tuple):
                raise InvalidInput("exceptions are for block points only")

    @classmethod
    def finite(cls, source: SpacePresentation, target: SpacePresentation,
               mapping: Mapping[str, str]) -> "SpaceMap":
        return cls(source, target, dict(mapping))

    @classmethod
    def identity(cls, space: SpacePresentation) -> "SpaceMap":
        c = space.carrier
        return cls(space, space, {p: p for p in c.named}, {b.name: ("block", b.name) for b in c.blocks})

    def __call__(self, p: Point) -> Point:
        if isinstance(p, tuple):
            if p in self.exceptions:
                return self.exceptions[p]
            kind, arg = self.rules[p[0]]
            return (arg, p[1]) if kind == "block" else arg
        return self.named[p]

    def _exc(self, block: str) -> dict[int, Point]:
        return {k: q for (b, k), q in self.exceptions.items() if b == block}

    def image(self, s: RSet) -> RSet:
        sc, tc = self.source.carrier, self.target.carrier
        out = RSet.of(tc, [self.named[p] for p in s.points])
        for b, t in zip(sc.blocks, s.traces):
            exc = self._exc(b.name)
            kind, arg = self.rules[b.name]
            rest = Trace(True, t.indices | exc.keys()) if t.cofinite else Trace(False, t.indices - exc.keys())
            if kind == "block":
                out = out | RSet.empty(tc).with_trace(arg, rest)
            elif not rest.empty:
                out = out | RSet.of(tc, [arg])
            out = out | RSet.of(tc, [q for k, q in exc.items() if k in t])
        return out

    def preimage(self, s: RSet) -> RSet:
        sc = self.source.carrier
        out = RSet.of(sc, [p for p in sc.named if self.named[p] in s])
        for b in sc.blocks:
            exc = self._exc(b.name)
            kind, arg = self.rules[b.name]
            if kind == "block":
                tr = s.trace(arg)
            else:
                tr = FULL_TRACE if arg in s else EMPTY_TRACE
            part = RSet.empty(sc).with_trace(b.name, tr)
            part = part - RSet.of(sc, [(b.name, k) for k in exc])
            part = part | RSet.of(sc, [(b.name, k) for k, q in exc.items() if q in s])
            out = out | part
        return out

    def bound(self, *extra: RSet) -> int:
        idx = [k for (_, k) in self.exceptions] + [q[1] for q in self.exceptions.values() if isinstance(q, tuple)]
        return max([generic_bound(self.source, *[e for e in extra if e.carrier == self.source.carrier]),
                    generic_bound(self.target, *[e for e in extra if e.carrier == self.target.carrier]),
                    *idx, -1])

    def source_reps(self, *extra: RSet) -> list[Point]:
        return representatives(self.source, bound=self.bound(*extra))

    def target_reps(self, *extra: RSet) -> list[Point]:
        return representatives(self.target, bound=self.bound(*extra))

    def graph(self) -> dict:
        """Point-by-point table; finite sources only."""
        return {p: self(p) for p in self.source.carrier.points()}


def is_order_preserving(f: SpaceMap) -> tuple[bool, Point | None]:
    if f.source.is_finite and f.target.is_finite:
        xf, yf = f.source.fin, f.target.fin
        for x in xf.points:
            fx = f(x)
            if any(not yf.leq(fx, f(y)) for y in xf.up[x]):
                return False, x
        return True, None
    for x in f.source_reps():
        if not f.image(f.source.up(x)) <= f.target.up(f(x)):
            return False, x
    return True, None


def is_continuous(f: SpaceMap) -> tuple[bool, RSet | None]:
    """Preimages of a generating family of target clopens are clopen."""
    m = f.bound()
    tc = f.target.carrier
    fam = basic_open_family(f.target, m)
    fam += [RSet.of(tc, [b.limit]) | RSet.tail(tc, b.name, m + 1) for b in tc.blocks if b.limit]
    for w in fam:
        if is_clopen(f.target, w) and not is_clopen(f.source, f.preimage(w)):
            return False, w
    return True, None


def is_injective(f: SpaceMap) -> tuple[bool, Point | None]:
    for x in f.source_reps():
        if f.preimage(RSet.of(f.target.carrier, [f(x)])) != RSet.of(f.source.carrier, [x]):
            return False, x
    return True, None


def is_surjective(f: SpaceMap) -> bool:
    return f.image(f.source.full) == f.target.full


def maps_equal_on(f: SpaceMap, g: SpaceMap) -> tuple[bool, Point | None]:
    """Pointwise equality on joint representatives (same source, same target)."""
    m = max(f.bound(), g.bound())
    for x in representatives(f.source, bound=m):
        if f(x) != g(x):
            return False, x
    return True, None
