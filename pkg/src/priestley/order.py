"""Partial orders presented as the reflexive closure of finitely many rectangles.

A rectangle ``(A, B)`` of representable sets contributes every pair ``a <= b``
with ``a`` in ``A`` and ``b`` in ``B``.  Composition of rectangles stays a
rectangle, so the transitive closure is a finite fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .setalg import Carrier, CarrierMismatch, Point, RSet
from .verdict import Verdict


@dataclass(frozen=True)
class OrderPresentation:
    carrier: Carrier
    rectangles: tuple[tuple[RSet, RSet], ...] = ()

    def __post_init__(self):
        for a, b in self.rectangles:
            if a.carrier != self.carrier or b.carrier != self.carrier:
                raise CarrierMismatch("rectangle sides must live on the order's carrier")

    @classmethod
    def discrete(cls, carrier: Carrier) -> "OrderPresentation":
        return cls(carrier, ())

    @classmethod
    def from_pairs(cls, carrier: Carrier, pairs: Iterable[tuple[Point, Point]]) -> "OrderPresentation":
        above: dict = {}
        for x, y in pairs:
            carrier.check_point(x)
            carrier.check_point(y)
            if x != y:
                above.setdefault(x, set()).add(y)
        rects = tuple((RSet.of(carrier, [x]), RSet.of(carrier, ys)) for x, ys in above.items())
        return cls(carrier, rects)

    def leq(self, x: Point, y: Point) -> bool:
        self.carrier.check_point(x)
        self.carrier.check_point(y)
        if x == y:
            return True
        return any(x in a and y in b for a, b in self.rectangles)

    def upclose(self, s: RSet) -> RSet:
        out = s
        for a, b in self.rectangles:
            if not a.isdisjoint(s):
                out = out | b
        return out

    def downclose(self, s: RSet) -> RSet:
        out = s
        for a, b in self.rectangles:
            if not b.isdisjoint(s):
                out = out | a
        return out

    def up(self, x: Point) -> RSet:
        return self.upclose(RSet.of(self.carrier, [x]))

    def down(self, x: Point) -> RSet:
        return self.downclose(RSet.of(self.carrier, [x]))

    def is_upset(self, s: RSet) -> bool:
        return self.upclose(s) == s

    def is_downset(self, s: RSet) -> bool:
        return self.downclose(s) == s

    def support_sets(self) -> list[RSet]:
        return [r for ab in self.rectangles for r in ab]


def transitive_closure(p: OrderPresentation) -> OrderPresentation:
    """Merge rectangles by left side and compose until nothing changes."""
    merged: dict[RSet, RSet] = {}
    for a, b in p.rectangles:
        if a.is_empty or b.is_empty:
            continue
        merged[a] = merged[a] | b if a in merged else b
    changed = True
    while changed:
        changed = False
        for a1 in list(merged):
            for a2, b2 in list(merged.items()):
                b1 = merged[a1]
                if not b1.isdisjoint(a2) and not b2 <= b1:
                    merged[a1] = b1 | b2
                    changed = True
    rects = sorted(merged.items(), key=lambda ab: (ab[0].sort_key(), ab[1].sort_key()))
    return OrderPresentation(p.carrier, tuple(rects))


def _off_diagonal(p: RSet, q: RSet) -> tuple[Point, Point] | None:
    """A pair (x, y) in p × q with x != y, if any."""
    x = p.pick()
    if x is None or q.is_empty:
        return None
    y = (q - RSet.of(q.carrier, [x])).pick()
    if y is not None:
        return x, y
    x2 = (p - RSet.of(p.carrier, [x])).pick()
    return (x2, x) if x2 is not None else None


def validate_order(p: OrderPresentation) -> tuple[Verdict, OrderPresentation | None]:
    """Check antisymmetry; on success also return the transitive fixpoint."""
    closed = transitive_closure(p)
    rects = closed.rectangles
    for a1, b1 in rects:
        for a2, b2 in rects:
            # x in a1 ∩ b2 and y in b1 ∩ a2 give x <= y <= x
            hit = _off_diagonal(a1 & b2, b1 & a2)
            if hit is not None:
                return Verdict.fail(hit, len(rects) ** 2), None
    return Verdict.ok(len(rects) ** 2), closed
