"""Built-in instances: presented infinite pairs and finite poset generators."""

from __future__ import annotations

import random
from itertools import permutations, product

from .maps import SpaceMap
from .pair import CompactificationPair
from .setalg import Carrier, RSet
from .space import SpacePresentation


# infinite pairs over the naturals

def naturals() -> SpacePresentation:
    """ℕ, discrete, trivially ordered."""
    return SpacePresentation.build(Carrier.tail([("N", None)]))


def _one_point(rects) -> SpacePresentation:
    c = Carrier.tail([("N", "inf")])
    return SpacePresentation.build(c, rects(c))


def fig2_space() -> SpacePresentation:
    """One-point compactification of ℕ with the new point on top."""
    return _one_point(lambda c: [(RSet.block(c, "N"), RSet.of(c, ["inf"]))])


def _n_into(y: SpacePresentation) -> SpaceMap:
    return SpaceMap(naturals(), y, {}, {"N": ("block", "N")})


def fig2_pair() -> CompactificationPair:
    y = fig2_space()
    return CompactificationPair(naturals(), y, _n_into(y), "fig2")


def flat_pair() -> CompactificationPair:
    """ℕ into its one-point compactification, nothing ordered."""
    y = _one_point(lambda c: [])
    return CompactificationPair(naturals(), y, _n_into(y), "flat")


def bottom_pair() -> CompactificationPair:
    """ℕ with the added point placed below everything."""
    y = _one_point(lambda c: [(RSet.of(c, ["inf"]), RSet.block(c, "N"))])
    return CompactificationPair(naturals(), y, _n_into(y), "bottom")


def fig2_identity_pair() -> CompactificationPair:
    return CompactificationPair.identity(fig2_space(), "fig2-identity")


def capped_pair() -> CompactificationPair:
    """ℕ below a top t; the added point sits between."""
    cx = Carrier.tail([("N", None)], ["t"])
    x = SpacePresentation.build(cx, [(RSet.block(cx, "N"), RSet.of(cx, ["t"]))])
    cy = Carrier.tail([("N", "inf")], ["t"])
    y = SpacePresentation.build(cy, [(RSet.block(cy, "N"), RSet.of(cy, ["t"])),
                                     (RSet.of(cy, ["inf"]), RSet.of(cy, ["t"]))])
    e = SpaceMap(x, y, {"t": "t"}, {"N": ("block", "N")})
    return CompactificationPair(x, y, e, "capped")


def two_block_pair() -> CompactificationPair:
    """Two copies of ℕ, every point of the first below every point of the second."""
    cx = Carrier.tail([("A", None), ("B", None)])
    x = SpacePresentation.build(cx, [(RSet.block(cx, "A"), RSet.block(cx, "B"))])
    cy = Carrier.tail([("A", "a_inf"), ("B", "b_inf")])
    y = SpacePresentation.build(cy, [(RSet.block(cy, "A", with_limit=True),
                                      RSet.block(cy, "B", with_limit=True))])
    e = SpaceMap(x, y, {}, {"A": ("block", "A"), "B": ("block", "B")})
    return CompactificationPair(x, y, e, "two-block")


def infinite_pairs() -> list[CompactificationPair]:
    return [fig2_pair(), flat_pair(), bottom_pair(), fig2_identity_pair(), capped_pair(),
            two_block_pair()]


# finite posets

def _canonical(n: int, rel: frozenset) -> tuple:
    """Lexicographically least relation code over all relabellings."""
    best = None
    for perm in permutations(range(n)):
        code = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or code < best:
            best = code
    return best


def posets_up_to_iso(n: int) -> list[frozenset]:
    """Strict order relations on range(n), one per isomorphism class.

    Grown one maximal element at a time: the new point sits above a downset
    of the smaller poset.  Canonical forms by brute relabelling are fine for
    the small sizes used here.
    """
    level = {_canonical(0, frozenset()): frozenset()}
    for m in range(n):
        nxt = {}
        for rel in level.values():
            for mask in range(1 << m):
                below = {i for i in range(m) if mask >> i & 1}
                if any((a, b) in rel and b in below and a not in below for a in range(m) for b in range(m)):
                    continue
                new = rel | {(i, m) for i in below}
                key = _canonical(m + 1, new)
                nxt.setdefault(key, frozenset(new))
        level = nxt
    return [level[k] for k in sorted(level)]


def poset_space(n: int, rel) -> SpacePresentation:
    names = [str(i) for i in range(n)]
    return SpacePresentation.finite_poset(names, [(str(a), str(b)) for a, b in rel])


def finite_posets(n: int) -> list[SpacePresentation]:
    return [poset_space(n, r) for r in posets_up_to_iso(n)]


def random_poset(n: int, rng: random.Random, density: float | None = None) -> SpacePresentation:
    """Random order: a random DAG on a shuffled labelling, transitively closed."""
    p = rng.random() if density is None else density
    order = list(range(n))
    rng.shuffle(order)
    rel = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    return poset_space(n, rel)


def monotone_maps(x: SpacePresentation, z: SpacePresentation) -> list[SpaceMap]:
    """Every order-preserving map between finite spaces."""
    xs, zs = x.carrier.points(), z.carrier.points()
    fx, fz = x.fin, z.fin
    out = []
    for img in product(zs, repeat=len(xs)):
        g = dict(zip(xs, img))
        if all(fz.leq(g[a], g[b]) for a in xs for b in fx.up[a]):
            out.append(SpaceMap.finite(x, z, g))
    return out


def all_maps(x: SpacePresentation, z: SpacePresentation) -> list[SpaceMap]:
    xs, zs = x.carrier.points(), z.carrier.points()
    return [SpaceMap.finite(x, z, dict(zip(xs, img))) for img in product(zs, repeat=len(xs))]


BUILTIN_PAIRS = {
    "fig2": fig2_pair, "flat": flat_pair, "bottom": bottom_pair,
    "fig2-identity": fig2_identity_pair, "capped": capped_pair, "two-block": two_block_pair,
}
