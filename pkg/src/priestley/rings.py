"""Rings of upsets and their classification ladder.

A ring is either an explicit finite list of upsets, or the pullback
``R_Y = {e⁻¹(U) : U clopen upset of Y}`` of a compactification pair.  Pullback
membership is decided through Y: ``S`` is a member iff the least clopen upset
of Y containing ``e[S]`` pulls back to ``S``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .duality import spatial_implication
from .maps import is_order_preserving
from .pair import CompactificationPair
from .setalg import RSet, Trace, is_clopen
from .space import (
    SpacePresentation, clopen_upset_between, generic_bound,
    neighbourhoods, representatives,
)
from .verdict import InvalidInput, Verdict

DEFAULT_SUPPORT_BOUND = 3
DEFAULT_SAMPLES = 500
DEFAULT_SEED = 0


@dataclass(frozen=True)
class UpsetRing:
    base: SpacePresentation
    members: tuple[RSet, ...] | None = None
    pair: CompactificationPair | None = None
    name: str = ""

    def __post_init__(self):
        if (self.members is None) == (self.pair is None):
            raise InvalidInput("a ring is either explicit or a pullback")
        if self.pair is not None and self.pair.X != self.base:
            raise InvalidInput("pullback pair must start at the base space")
        if self.members is not None:
            for m in self.members:
                if m.carrier != self.base.carrier:
                    raise InvalidInput("ring member on the wrong carrier")

    @classmethod
    def explicit(cls, base: SpacePresentation, members: Iterable[RSet], name: str = "") -> "UpsetRing":
        uniq = sorted(set(members), key=RSet.sort_key)
        return cls(base, tuple(uniq), None, name)

    @classmethod
    def pullback(cls, pair: CompactificationPair, name: str = "") -> "UpsetRing":
        return cls(pair.X, None, pair, name)

    @classmethod
    def all_upsets(cls, x: SpacePresentation) -> "UpsetRing":
        if not x.is_finite:
            raise InvalidInput("Up(X) is only listed for finite X")
        return cls.explicit(x, (x.set(u) for u in x.fin.upsets), "Up(X)")

    @classmethod
    def clopen_upsets(cls, x: SpacePresentation) -> "UpsetRing":
        return cls.pullback(CompactificationPair.identity(x), "ClopUp(X)")

    @property
    def is_explicit(self) -> bool:
        return self.members is not None

    @property
    def is_finite(self) -> bool:
        return self.is_explicit or self.base.is_finite

    def bound(self, *extra: RSet) -> int:
        if self.is_explicit:
            return generic_bound(self.base, *self.members, *extra)
        return self.pair.e.bound(*extra)

    def _lift(self, s: RSet) -> RSet | None:
        """Least clopen upset of Y whose preimage could be ``s``."""
        return clopen_upset_between(self.pair.Y, self.pair.e.image(s))

    def contains(self, s: RSet) -> bool:
        if self.is_explicit:
            return s in self.members
        u = self._lift(s)
        return u is not None and self.pair.e.preimage(u) == s

    def to_target(self, s: RSet) -> RSet:
        """The clopen upset of Y a pullback member comes from."""
        u = self._lift(s)
        if u is None or self.pair.e.preimage(u) != s:
            raise InvalidInput(f"{s} is not a member of the ring")
        return u

    def find_member(self, contains: RSet, avoids: RSet | None = None,
                    context: Iterable[RSet] = ()) -> RSet | None:
        """A member containing ``contains`` and disjoint from ``avoids``.

        The result is the least such member, up to generic block points.
        """
        avoids = self.base.empty if avoids is None else avoids
        if self.is_explicit:
            cands = [m for m in self.members if contains <= m]
            if not cands:
                return None
            least = cands[0]
            for m in cands[1:]:
                least = least & m
            return least if least.isdisjoint(avoids) else None
        y, e = self.pair.Y, self.pair.e
        upper = ~y.downclose(e.image(avoids))
        u = clopen_upset_between(y, e.image(contains), upper, context=[e.image(c) for c in context])
        return None if u is None else e.preimage(u)

    def enumerate(self) -> list[RSet]:
        """All members, for finite rings."""
        if self.is_explicit:
            return list(self.members)
        if not self.base.is_finite:
            raise InvalidInput("pullback ring over an infinite space is not enumerable")
        return [u for u in (self.base.set(v) for v in self.base.fin.upsets) if self.contains(u)]


# sweeps over members of possibly infinite rings

def _small_support_sets(x: SpacePresentation, pool: list[int], k: int) -> list[RSet]:
    c = x.carrier
    per_block = []
    for b in c.blocks:
        opts = []
        for size in range(k + 1):
            for idx in combinations(pool, size):
                opts.append((size, Trace(False, frozenset(idx))))
                opts.append((size, Trace(True, frozenset(idx))))
        per_block.append(opts)
    named = list(c.named)
    out = []

    def rec(i, budget, traces):
        if i == len(per_block):
            for r in range(len(named) + 1):
                for pts in combinations(named, r):
                    out.append(RSet(c, tuple(traces), frozenset(pts)))
            return
        for size, t in per_block[i]:
            if size <= budget:
                rec(i + 1, budget - size, traces + [t])

    rec(0, k, [])
    return out


@dataclass
class Sweep:
    members: list
    pairs: list
    exhaustive: bool


def sweep_members(ring: UpsetRing, support_bound: int = DEFAULT_SUPPORT_BOUND,
                  samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> Sweep:
    """Members and member pairs to test.

    Finite rings give every pair.  Otherwise: every member whose support has
    at most ``support_bound`` indices (from a pool that covers all such sets up
    to index symmetry), every pair of those, and ``samples`` seeded random
    pairs of members generated as pullbacks of random clopen upset hulls.
    """
    if ring.is_finite:
        ms = sorted(ring.enumerate(), key=RSet.sort_key)
        return Sweep(ms, [(a, b) for a in ms for b in ms], True)
    m = ring.bound()
    pool = list(range(m + 1 + support_bound))
    ms = [s for s in _small_support_sets(ring.base, pool, support_bound) if ring.contains(s)]
    ms = sorted(set(ms), key=RSet.sort_key)
    pairs = [(a, b) for a in ms for b in ms]
    rng = random.Random(seed)
    y, e = ring.pair.Y, ring.pair.e
    seeds = representatives(y, bound=m + 2 * support_bound)

    def rand_member():
        pts = rng.sample(seeds, rng.randint(0, min(3, len(seeds))))
        u = clopen_upset_between(y, y.set(pts))
        return e.preimage(u)

    for _ in range(samples):
        pairs.append((rand_member(), rand_member()))
    return Sweep(ms, pairs, False)


# ladder

def check_ring(r: UpsetRing) -> Verdict:
    if not r.is_explicit:
        ok, bad = is_order_preserving(r.pair.e)
        if not ok:
            return Verdict.fail(("e not order-preserving", bad))
        return Verdict.ok(0)
    x = r.base
    ms = set(r.members)
    for need in (x.empty, x.full):
        if need not in ms:
            return Verdict.fail(("missing", need))
    for m in r.members:
        if not x.order.is_upset(m):
            return Verdict.fail(("not an upset", m))
    tested = 0
    for a in r.members:
        for b in r.members:
            tested += 1
            if a | b not in ms:
                return Verdict.fail(("union", a, b), tested)
            if a & b not in ms:
                return Verdict.fail(("intersection", a, b), tested)
    return Verdict.ok(tested)


def check_priestley_ring(r: UpsetRing) -> Verdict:
    """x not below y gives a member containing x and missing y."""
    v = check_ring(r)
    if not v:
        return v
    x = r.base
    reps = representatives(x, bound=r.bound())
    tested = 0
    for p in reps:
        upp = x.up(p)
        for q in reps:
            if q in upp:
                continue
            tested += 1
            if r.find_member(x.set([p]), x.set([q])) is None:
                return Verdict.fail((p, q), tested)
    return Verdict.ok(tested, exhaustive=x.is_finite)


def check_priestley_basis(r: UpsetRing) -> Verdict:
    """Priestley ring whose differences U \\ V form a basis: each point has one
    inside each of its basic neighbourhoods."""
    v = check_priestley_ring(r)
    if not v:
        return v
    x = r.base
    m = r.bound()
    reps = representatives(x, bound=m)
    for p in reps:
        n = neighbourhoods(x, p, m)
        u = r.find_member(x.set([p]), context=[n])
        w = None if u is None else r.find_member(u - n, x.set([p]))
        if w is None:
            return Verdict.fail((p, n), len(reps))
    return Verdict.ok(len(reps), exhaustive=x.is_finite)


def heyting_implication_in_ring(r: UpsetRing, e_: RSet, f_: RSet) -> RSet | None:
    """Greatest member G with G ∩ E ⊆ F, or None when there is none.

    For a pullback ring, density of e[X] turns G ∩ E ⊆ F into Ug ⊆ Y \\ ↓(U \\ V)
    for the clopen upsets U, V, Ug behind E, F, G.  Clopen upsets inside an
    open upset of a Priestley space have a greatest element exactly when the
    open upset is itself clopen, which decides the question.
    """
    if not (r.contains(e_) and r.contains(f_)):
        raise InvalidInput("implication arguments must be ring members")
    if r.is_explicit:
        cands = [g for g in r.members if (g & e_) <= f_]
        top = [g for g in cands if all(h <= g for h in cands)]
        return top[0] if top else None
    y = r.pair.Y
    u, v = r.to_target(e_), r.to_target(f_)
    w = ~y.downclose(u - v)
    return r.pair.e.preimage(w) if is_clopen(y, w) else None


def upset_implication(x: SpacePresentation, e_: RSet, f_: RSet) -> RSet:
    """E → F computed in the algebra of all upsets."""
    return spatial_implication(x, e_, f_)


def check_heyting_ring(r: UpsetRing, support_bound: int = DEFAULT_SUPPORT_BOUND,
                       samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> Verdict:
    sw = sweep_members(r, support_bound, samples, seed)
    for i, (a, b) in enumerate(sw.pairs, 1):
        if heyting_implication_in_ring(r, a, b) is None:
            return Verdict.fail((a, b), i)
    return Verdict.ok(len(sw.pairs), sw.exhaustive)


def check_esakia_ring(r: UpsetRing, support_bound: int = DEFAULT_SUPPORT_BOUND,
                      samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> Verdict:
    """E → F taken among all upsets stays in the ring."""
    sw = sweep_members(r, support_bound, samples, seed)
    for i, (a, b) in enumerate(sw.pairs, 1):
        if not r.contains(upset_implication(r.base, a, b)):
            return Verdict.fail((a, b), i)
    return Verdict.ok(len(sw.pairs), sw.exhaustive)


# N-bases

def basis_generators(pair: CompactificationPair) -> list[RSet]:
    """Preimages of a union-generating family of clopens of Y.

    Every clopen of Y is a finite union of singletons of non-limit points and
    limit neighbourhoods {ℓ} ∪ tail(n); tails beyond the support are
    interchangeable, so one generic tail per limit suffices.
    """
    y, e = pair.Y, pair.e
    m = e.bound()
    c = y.carrier
    gens = [y.set([p]) for p in representatives(y, bound=m) if p not in c.limits]
    for b in c.blocks:
        if b.limit:
            gens += [RSet.tail(c, b.name, n) | y.set([b.limit]) for n in range(m + 4)]
    out = {e.preimage(g) for g in gens if is_clopen(y, g)}
    return sorted(out, key=RSet.sort_key)


def check_n_basis(pair: CompactificationPair, support_bound: int = DEFAULT_SUPPORT_BOUND,
                  samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> Verdict:
    """For W, V in B_Y with ↑W ∩ ↓V empty, some K in R_Y has W ⊆ K and K ∩ V empty.

    The condition survives finite unions in either slot, so testing generator
    pairs decides it.  On finite X every subset is tried directly.
    """
    x = pair.X
    ring = UpsetRing.pullback(pair)
    if x.is_finite:
        pts = x.carrier.points()
        fam = [x.set(s) for r in range(len(pts) + 1) for s in combinations(pts, r)]
        fam = [s for s in fam if _in_b_y(pair, s)]
        exhaustive = True
    else:
        fam = basis_generators(pair)
        exhaustive = False
    tested = 0
    for w in fam:
        upw = x.upclose(w)
        for v in fam:
            if not upw.isdisjoint(x.downclose(v)):
                continue
            tested += 1
            if ring.find_member(w, v) is None:
                return Verdict.fail((w, v), tested)
    rng = random.Random(seed)
    if not exhaustive and len(fam) > 1:
        for _ in range(samples):
            w = _union(x, rng.sample(fam, rng.randint(1, min(3, len(fam)))))
            v = _union(x, rng.sample(fam, rng.randint(1, min(3, len(fam)))))
            if not x.upclose(w).isdisjoint(x.downclose(v)):
                continue
            tested += 1
            if ring.find_member(w, v) is None:
                return Verdict.fail((w, v), tested)
    return Verdict.ok(tested, exhaustive)


def _union(x: SpacePresentation, sets) -> RSet:
    out = x.empty
    for s in sets:
        out = out | s
    return out


def _in_b_y(pair: CompactificationPair, s: RSet) -> bool:
    """s = e⁻¹(W) for a clopen W of Y (finite Y: every subset is clopen)."""
    if pair.Y.is_finite:
        return pair.e.preimage(pair.e.image(s)) == s
    raise InvalidInput("direct B_Y membership is for finite Y")


def check_level(r: UpsetRing, level: str, **kw) -> Verdict:
    if level == "ring":
        return check_ring(r)
    if level == "priestley":
        return check_priestley_ring(r)
    if level == "basis":
        return check_priestley_basis(r)
    if level == "heyting":
        return check_heyting_ring(r, **kw)
    if level == "esakia":
        return check_esakia_ring(r, **kw)
    if level == "nbasis":
        if r.is_explicit:
            raise InvalidInput("the N-basis check needs a pullback ring")
        return check_n_basis(r.pair, **kw)
    raise InvalidInput(f"unknown level {level!r}")


LEVELS = ("ring", "priestley", "basis", "heyting", "esakia", "nbasis")
