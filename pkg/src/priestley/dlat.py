"""Finite bounded distributive lattices and Heyting algebras."""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from .verdict import Verdict

BRUTE_FORCE_CAP = 20


class LatticeTooLarge(ValueError):
    pass


class NotALattice(ValueError):
    pass


class FinDLat:
    """A finite poset given by element ids and a ≤ relation.

    Nothing is assumed about the relation; :func:`validate_dlat` decides
    whether it is a bounded distributive lattice.  Meet and join tables are
    only available once it is.
    """

    def __init__(self, elements: Iterable[str], leq: Iterable[tuple[str, str]]):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate element ids")
        self.index = {a: i for i, a in enumerate(self.elements)}
        n = len(self.elements)
        m = np.eye(n, dtype=bool)
        for a, b in leq:
            m[self.index[a], self.index[b]] = True
        m.flags.writeable = False
        self.leq_matrix = m
        self.sets = None  # concrete members when built from sets

    @classmethod
    def of_sets(cls, named_sets: Mapping[str, frozenset]) -> "FinDLat":
        """Lattice of the given sets ordered by inclusion."""
        names = list(named_sets)
        pairs = [(a, b) for a in names for b in names if named_sets[a] <= named_sets[b]]
        d = cls(names, pairs)
        d.sets = dict(named_sets)
        return d

    @classmethod
    def chain(cls, n: int) -> "FinDLat":
        names = [str(i) for i in range(n)]
        return cls(names, [(a, b) for i, a in enumerate(names) for b in names[i:]])

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinDLat({len(self)} elements)"

    def leq(self, a: str, b: str) -> bool:
        return bool(self.leq_matrix[self.index[a], self.index[b]])

    def _bound(self, i: int, j: int, upper: bool) -> int | None:
        m = self.leq_matrix
        cand = (m[i] & m[j]) if upper else (m[:, i] & m[:, j])
        idx = np.flatnonzero(cand)
        for k in idx:
            if (m[k, idx] if upper else m[idx, k]).all():
                return int(k)
        return None

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        n = len(self)
        meet = np.full((n, n), -1, dtype=np.int64)
        join = np.full((n, n), -1, dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                mt, jn = self._bound(i, j, False), self._bound(i, j, True)
                if mt is None or jn is None:
                    raise NotALattice(f"no {'meet' if mt is None else 'join'} of "
                                      f"{self.elements[i]!r} and {self.elements[j]!r}")
                meet[i, j] = meet[j, i] = mt
                join[i, j] = join[j, i] = jn
        return meet, join

    @property
    def meet_table(self) -> np.ndarray:
        return self._tables[0]

    @property
    def join_table(self) -> np.ndarray:
        return self._tables[1]

    def meet(self, a: str, b: str) -> str:
        return self.elements[self.meet_table[self.index[a], self.index[b]]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self.join_table[self.index[a], self.index[b]]]

    @cached_property
    def bottom(self) -> str:
        col = self.leq_matrix.all(axis=1)
        idx = np.flatnonzero(col)
        if len(idx) != 1:
            raise NotALattice("no bottom element")
        return self.elements[idx[0]]

    @cached_property
    def top(self) -> str:
        idx = np.flatnonzero(self.leq_matrix.all(axis=0))
        if len(idx) != 1:
            raise NotALattice("no top element")
        return self.elements[idx[0]]

    def up(self, a: str) -> frozenset:
        return frozenset(self.elements[k] for k in np.flatnonzero(self.leq_matrix[self.index[a]]))


def validate_dlat(d: FinDLat) -> Verdict:
    """Witness tuples start with the name of the failing axiom."""
    m = d.leq_matrix
    n = len(d)
    if n == 0:
        return Verdict.fail(("bottom",))
    for i in range(n):
        for j in range(n):
            if i != j and m[i, j] and m[j, i]:
                return Verdict.fail(("antisymmetry", d.elements[i], d.elements[j]))
    comp = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    bad = np.argwhere(comp & ~m)
    if len(bad):
        i, k = bad[0]
        j = int(np.flatnonzero(m[i] & m[:, k])[0])
        return Verdict.fail(("transitivity", d.elements[i], d.elements[j], d.elements[k]))
    if np.flatnonzero(m.all(axis=1)).size != 1:
        return Verdict.fail(("bottom",))
    if np.flatnonzero(m.all(axis=0)).size != 1:
        return Verdict.fail(("top",))
    for i in range(n):
        for j in range(i + 1, n):
            if d._bound(i, j, False) is None:
                return Verdict.fail(("meet", d.elements[i], d.elements[j]))
            if d._bound(i, j, True) is None:
                return Verdict.fail(("join", d.elements[i], d.elements[j]))
    meet, join = d.meet_table, d.join_table
    # a∧(b∨c) = (a∧b)∨(a∧c), vectorised over b, c
    for a in range(n):
        lhs = meet[a][join]
        rhs = join[meet[a][:, None], meet[a][None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            return Verdict.fail(("distributivity", d.elements[a], d.elements[b], d.elements[c]))
    return Verdict.ok(n ** 3)


def prime_filters(d: FinDLat) -> list[frozenset]:
    """Brute force: every subset of the elements, filtered by the prime-filter axioms."""
    n = len(d)
    if n > BRUTE_FORCE_CAP:
        raise LatticeTooLarge(f"{n} elements exceeds the brute-force cap of {BRUTE_FORCE_CAP}")
    meet, join = d.meet_table, d.join_table
    subsets = np.arange(1 << n, dtype=np.int64)
    bits = [(subsets >> i) & 1 == 1 for i in range(n)]
    keep = subsets != 0
    keep &= ~bits[d.index[d.bottom]]
    for i in range(n):
        for j in range(n):
            if d.leq_matrix[i, j]:
                keep &= ~bits[i] | bits[j]
    for i in range(n):
        for j in range(i + 1, n):
            keep &= ~(bits[i] & bits[j]) | bits[meet[i, j]]
            keep &= ~bits[join[i, j]] | bits[i] | bits[j]
    return [frozenset(d.elements[i] for i in range(n) if (s >> i) & 1) for s in subsets[keep]]


def prime_filters_principal(d: FinDLat) -> list[frozenset]:
    """Every filter of a finite lattice is principal; keep the prime ones."""
    out = []
    for a in d.elements:
        f = d.up(a)
        if d.bottom in f:
            continue
        if all(x in f or y in f for x in d.elements for y in d.elements if d.join(x, y) in f):
            out.append(f)
    return out


def join_irreducibles(d: FinDLat) -> list[str]:
    """Elements other than the bottom with exactly one lower cover."""
    m = d.leq_matrix
    out = []
    for j in d.elements:
        i = d.index[j]
        below = [k for k in np.flatnonzero(m[:, i]) if k != i]
        if not below:
            continue
        covers = [k for k in below if not any(m[k, l] and l != k for l in below)]
        if len(covers) == 1:
            out.append(j)
    return out


def prime_filters_fast(d: FinDLat) -> list[frozenset]:
    return [d.up(j) for j in join_irreducibles(d)]


def heyting_implication(d: FinDLat, a: str, b: str) -> str | None:
    """Greatest c with c ∧ a ≤ b, or None when no greatest one exists."""
    ia, ib = d.index[a], d.index[b]
    meet = d.meet_table
    cands = [c for c in range(len(d)) if d.leq_matrix[meet[c, ia], ib]]
    for c in cands:
        if all(d.leq_matrix[k, c] for k in cands):
            return d.elements[c]
    return None


def is_heyting(d: FinDLat) -> bool:
    return all(heyting_implication(d, a, b) is not None for a, b in product(d.elements, repeat=2))


def implication_table(d: FinDLat) -> dict[tuple[str, str], str]:
    return {(a, b): heyting_implication(d, a, b) for a, b in product(d.elements, repeat=2)}


def is_lattice_hom(h: Mapping[str, str], src: FinDLat, dst: FinDLat) -> Verdict:
    if h[src.bottom] != dst.bottom:
        return Verdict.fail(("bottom", src.bottom))
    if h[src.top] != dst.top:
        return Verdict.fail(("top", src.top))
    for a, b in product(src.elements, repeat=2):
        if h[src.meet(a, b)] != dst.meet(h[a], h[b]):
            return Verdict.fail(("meet", a, b))
        if h[src.join(a, b)] != dst.join(h[a], h[b]):
            return Verdict.fail(("join", a, b))
    return Verdict.ok(len(src) ** 2)


def is_heyting_hom(h: Mapping[str, str], src: FinDLat, dst: FinDLat) -> Verdict:
    v = is_lattice_hom(h, src, dst)
    if not v:
        return v
    for a, b in product(src.elements, repeat=2):
        if h[heyting_implication(src, a, b)] != heyting_implication(dst, h[a], h[b]):
            return Verdict.fail(("implication", a, b))
    return Verdict.ok(len(src) ** 2)
