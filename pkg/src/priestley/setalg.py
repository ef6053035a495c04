"""Exact Boolean algebra of representable subsets of a carrier.

A carrier is a finite list of isolated named points plus finitely many
countable *blocks*.  Block ``b`` holds the points ``(b, 0), (b, 1), ...`` and
may own a named limit point; topologically such a block together with its
limit is the one-point compactification of a countable discrete set, a block
without limit is plain discrete.  The carrier is the topological sum of its
blocks and isolated points.

A representable set stores, per block, either a finite set of indices or the
complement of one, plus the set of named points it contains.  This class is a
Boolean algebra and is closed under the order closures computed in
:mod:`priestley.order`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Union

Point = Union[str, tuple]


class CarrierMismatch(ValueError):
    pass


class UnknownPoint(KeyError):
    pass


@dataclass(frozen=True)
class Block:
    name: str
    limit: str | None = None


@dataclass(frozen=True)
class Carrier:
    blocks: tuple[Block, ...] = ()
    isolated: tuple[str, ...] = ()
    _block_index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = [b.name for b in self.blocks]
        named = [b.limit for b in self.blocks if b.limit is not None] + list(self.isolated)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate block names in {names}")
        if len(set(named)) != len(named):
            raise ValueError(f"duplicate point names in {named}")
        if set(names) & set(named):
            raise ValueError("block names and point names must be distinct")
        if "points" in names:
            raise ValueError("'points' is reserved and cannot name a block")
        object.__setattr__(self, "_block_index", {b.name: i for i, b in enumerate(self.blocks)})

    @classmethod
    def finite(cls, points: int | Iterable[str]) -> "Carrier":
        if isinstance(points, int):
            if points < 0:
                raise ValueError("point count must be >= 0")
            points = [str(i) for i in range(points)]
        return cls((), tuple(points))

    @classmethod
    def tail(cls, blocks: Iterable[Block | tuple], isolated: Iterable[str] = ()) -> "Carrier":
        bs = tuple(b if isinstance(b, Block) else Block(*b) for b in blocks)
        return cls(bs, tuple(isolated))

    @property
    def is_finite(self) -> bool:
        return not self.blocks

    @property
    def limits(self) -> tuple[str, ...]:
        return tuple(b.limit for b in self.blocks if b.limit is not None)

    @property
    def named(self) -> tuple[str, ...]:
        return self.limits + self.isolated

    def block_index(self, name: str) -> int:
        try:
            return self._block_index[name]
        except KeyError:
            raise UnknownPoint(f"unknown block {name!r}") from None

    def block_of_limit(self, limit: str) -> Block | None:
        for b in self.blocks:
            if b.limit == limit:
                return b
        return None

    def check_point(self, p: Point) -> Point:
        if isinstance(p, tuple):
            if len(p) != 2 or not isinstance(p[1], int) or p[1] < 0:
                raise UnknownPoint(f"malformed block point {p!r}")
            self.block_index(p[0])
            return p
        if p not in self.named:
            raise UnknownPoint(f"unknown point {p!r}")
        return p

    def points(self) -> tuple[str, ...]:
        """All points of a finite carrier, in declaration order."""
        if not self.is_finite:
            raise ValueError("carrier has infinite blocks")
        return self.isolated


class Trace(NamedTuple):
    """Indices of one block: ``indices`` if finite, all but ``indices`` if cofinite."""

    cofinite: bool
    indices: frozenset

    def __contains__(self, k) -> bool:
        return (k in self.indices) != self.cofinite

    def union(self, o: "Trace") -> "Trace":
        if self.cofinite and o.cofinite:
            return Trace(True, self.indices & o.indices)
        if self.cofinite:
            return Trace(True, self.indices - o.indices)
        if o.cofinite:
            return Trace(True, o.indices - self.indices)
        return Trace(False, self.indices | o.indices)

    def intersection(self, o: "Trace") -> "Trace":
        if self.cofinite and o.cofinite:
            return Trace(True, self.indices | o.indices)
        if self.cofinite:
            return Trace(False, o.indices - self.indices)
        if o.cofinite:
            return Trace(False, self.indices - o.indices)
        return Trace(False, self.indices & o.indices)

    def complement(self) -> "Trace":
        return Trace(not self.cofinite, self.indices)

    @property
    def empty(self) -> bool:
        return not self.cofinite and not self.indices


EMPTY_TRACE = Trace(False, frozenset())
FULL_TRACE = Trace(True, frozenset())


@dataclass(frozen=True)
class RSet:
    carrier: Carrier
    traces: tuple[Trace, ...]
    points: frozenset

    # construction

    @classmethod
    def empty(cls, carrier: Carrier) -> "RSet":
        return cls(carrier, (EMPTY_TRACE,) * len(carrier.blocks), frozenset())

    @classmethod
    def full(cls, carrier: Carrier) -> "RSet":
        return cls(carrier, (FULL_TRACE,) * len(carrier.blocks), frozenset(carrier.named))

    @classmethod
    def of(cls, carrier: Carrier, points: Iterable[Point]) -> "RSet":
        named = set()
        idx: dict[int, set] = {}
        for p in points:
            carrier.check_point(p)
            if isinstance(p, tuple):
                idx.setdefault(carrier.block_index(p[0]), set()).add(p[1])
            else:
                named.add(p)
        traces = tuple(Trace(False, frozenset(idx.get(i, ()))) for i in range(len(carrier.blocks)))
        return cls(carrier, traces, frozenset(named))

    @classmethod
    def block(cls, carrier: Carrier, block: str, cofinite: bool = True,
              indices: Iterable[int] = (), with_limit: bool = False) -> "RSet":
        """Part of one block (optionally with its limit point)."""
        i = carrier.block_index(block)
        traces = [EMPTY_TRACE] * len(carrier.blocks)
        traces[i] = Trace(cofinite, frozenset(indices))
        pts = frozenset()
        if with_limit:
            lim = carrier.blocks[i].limit
            if lim is None:
                raise ValueError(f"block {block!r} has no limit point")
            pts = frozenset([lim])
        return cls(carrier, tuple(traces), pts)

    @classmethod
    def tail(cls, carrier: Carrier, block: str, start: int) -> "RSet":
        """The indices ``>= start`` of one block."""
        return cls.block(carrier, block, True, range(start))

    def with_trace(self, block: str, trace: Trace) -> "RSet":
        i = self.carrier.block_index(block)
        traces = list(self.traces)
        traces[i] = Trace(trace.cofinite, frozenset(trace.indices))
        return RSet(self.carrier, tuple(traces), self.points)

    def trace(self, block: str) -> Trace:
        return self.traces[self.carrier.block_index(block)]

    # Boolean algebra

    def _same(self, other: "RSet"):
        if not isinstance(other, RSet):
            raise TypeError(f"expected RSet, got {type(other).__name__}")
        if other.carrier is not self.carrier and other.carrier != self.carrier:
            raise CarrierMismatch("sets live on different carriers")

    def __or__(self, other: "RSet") -> "RSet":
        self._same(other)
        return RSet(self.carrier, tuple(a.union(b) for a, b in zip(self.traces, other.traces)),
                    self.points | other.points)

    def __and__(self, other: "RSet") -> "RSet":
        self._same(other)
        return RSet(self.carrier, tuple(a.intersection(b) for a, b in zip(self.traces, other.traces)),
                    self.points & other.points)

    def __invert__(self) -> "RSet":
        return RSet(self.carrier, tuple(t.complement() for t in self.traces),
                    frozenset(self.carrier.named) - self.points)

    def __sub__(self, other: "RSet") -> "RSet":
        self._same(other)
        return self & ~other

    def __le__(self, other: "RSet") -> bool:
        return (self - other).is_empty

    def __ge__(self, other: "RSet") -> bool:
        return other <= self

    def __lt__(self, other: "RSet") -> bool:
        return self <= other and self != other

    def isdisjoint(self, other: "RSet") -> bool:
        return (self & other).is_empty

    # queries

    def __contains__(self, p: Point) -> bool:
        if isinstance(p, tuple):
            return p[1] in self.traces[self.carrier.block_index(p[0])]
        return p in self.points

    @property
    def is_empty(self) -> bool:
        return not self.points and all(t.empty for t in self.traces)

    @property
    def is_finite(self) -> bool:
        return not any(t.cofinite for t in self.traces)

    def __iter__(self) -> Iterator[Point]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite set")
        for p in self.carrier.named:
            if p in self.points:
                yield p
        for b, t in zip(self.carrier.blocks, self.traces):
            for k in sorted(t.indices):
                yield (b.name, k)

    def __len__(self) -> int:
        if not self.is_finite:
            raise ValueError("infinite set has no length")
        return len(self.points) + sum(len(t.indices) for t in self.traces)

    def pick(self) -> Point | None:
        """Some element (deterministic), or None if empty."""
        for p in self.carrier.named:
            if p in self.points:
                return p
        for b, t in zip(self.carrier.blocks, self.traces):
            if t.cofinite:
                k = 0
                while k in t.indices:
                    k += 1
                return (b.name, k)
            if t.indices:
                return (b.name, min(t.indices))
        return None

    def support_max(self) -> int:
        """Largest block index mentioned by this set, -1 if none."""
        return max((max(t.indices) for t in self.traces if t.indices), default=-1)

    def sort_key(self):
        return (sum(len(t.indices) for t in self.traces) + len(self.points),
                tuple((t.cofinite, tuple(sorted(t.indices))) for t in self.traces),
                tuple(sorted(self.points)))

    def __repr__(self) -> str:
        return f"RSet({describe(self)})"


def describe(s: RSet) -> str:
    parts = sorted(s.points)
    for b, t in zip(s.carrier.blocks, s.traces):
        idx = ",".join(str(k) for k in sorted(t.indices))
        if t.cofinite:
            parts.append(b.name + (f"\\{{{idx}}}" if idx else ""))
        elif t.indices:
            parts.append(f"{b.name}{{{idx}}}")
    return "{" + ", ".join(parts) + "}"


def apply_boolean(op: str, s: RSet, t: RSet | None = None) -> RSet:
    if op == "complement":
        if t is not None:
            raise ValueError("complement takes one argument")
        return ~s
    if t is None:
        raise ValueError(f"{op} takes two arguments")
    if op == "union":
        return s | t
    if op == "intersection":
        return s & t
    if op == "difference":
        return s - t
    raise ValueError(f"unknown operation {op!r}")


def _carrier_of(x) -> Carrier:
    return x if isinstance(x, Carrier) else x.carrier


def _check(c: Carrier, s: RSet):
    if s.carrier is not c and s.carrier != c:
        raise CarrierMismatch("set does not live on this carrier")


def is_open(space, s: RSet) -> bool:
    c = _carrier_of(space)
    _check(c, s)
    return all(t.cofinite for b, t in zip(c.blocks, s.traces)
               if b.limit is not None and b.limit in s.points)


def is_closed(space, s: RSet) -> bool:
    c = _carrier_of(space)
    _check(c, s)
    return all(b.limit in s.points for b, t in zip(c.blocks, s.traces)
               if b.limit is not None and t.cofinite)


def is_clopen(space, s: RSet) -> bool:
    return is_open(space, s) and is_closed(space, s)


def is_compact(space, s: RSet) -> bool:
    """Closed-in-a-compact-block test: infinite traces need their block's limit."""
    c = _carrier_of(space)
    _check(c, s)
    return all(not t.cofinite or (b.limit is not None and b.limit in s.points)
               for b, t in zip(c.blocks, s.traces))


def classify_set(space, s: RSet) -> dict:
    o, cl = is_open(space, s), is_closed(space, s)
    return {"finite": s.is_finite, "open": o, "closed": cl, "clopen": o and cl}


def closure(space, s: RSet) -> RSet:
    c = _carrier_of(space)
    _check(c, s)
    extra = {b.limit for b, t in zip(c.blocks, s.traces) if b.limit is not None and t.cofinite}
    return RSet(c, s.traces, s.points | extra)


def interior(space, s: RSet) -> RSet:
    c = _carrier_of(space)
    _check(c, s)
    drop = {b.limit for b, t in zip(c.blocks, s.traces) if b.limit is not None and not t.cofinite}
    return RSet(c, s.traces, s.points - drop)


def is_dense_in(space, a: RSet, b: RSet) -> tuple[bool, Point | None]:
    """Whether ``a`` is dense in ``b``; on failure also a point of ``b`` outside cl(a)."""
    if not a <= b:
        raise ValueError("dense-in test needs a ⊆ b")
    missing = b - closure(space, a)
    return missing.is_empty, missing.pick()


def support_bound(*sets: RSet) -> int:
    return max((s.support_max() for s in sets), default=-1)
