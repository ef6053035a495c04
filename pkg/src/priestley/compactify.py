"""Compactification pairs: classification, finite constructions, comparison, lifts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .dlat import FinDLat
from .duality import (
    clopup_lattice, is_p_morphism, roundtrip_space, set_name, spatial_implication, spec_space,
)
from .maps import SpaceMap, is_continuous, is_injective, is_order_preserving
from .pair import CompactificationPair
from .rings import (
    DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_SUPPORT_BOUND, UpsetRing, check_esakia_ring,
    check_heyting_ring, check_n_basis, check_priestley_basis, heyting_implication_in_ring,
    sweep_members,
)
from .setalg import RSet, closure, is_clopen, is_closed, is_dense_in
from .space import (
    SpacePresentation, basic_open_family, check_image_compact, classify_space, is_nachbin,
    representatives,
)
from .verdict import EngineBug, InvalidInput, Verdict


# classification

def _trace_clopen(p: CompactificationPair, c: RSet) -> RSet | None:
    """A clopen W of Y with e⁻¹(W) = c, or None when there is none.

    W must contain cl(e[c]); at a limit with a finite trace it can only be
    made open by adding the block points Y has outside e[X].
    """
    y, e = p.Y, p.e
    img = e.image(p.X.full)
    w = closure(y, e.image(c))
    for b, t in zip(y.carrier.blocks, w.traces):
        if b.limit is not None and b.limit in w.points and not t.cofinite:
            w = w | (RSet.block(y.carrier, b.name) - img)
    if is_clopen(y, w) and e.preimage(w) == c:
        return w
    return None


def check_embedding(p: CompactificationPair) -> dict[str, Verdict]:
    x, y, e = p.X, p.Y, p.e
    out = {}
    ok, bad = is_injective(e)
    out["injective"] = Verdict.ok(0, x.is_finite) if ok else Verdict.fail(bad)
    ok, bad = is_continuous(e)
    out["continuous"] = Verdict.ok(0, x.is_finite) if ok else Verdict.fail(bad)
    m = e.bound()
    fam = basic_open_family(x, m)
    fam += [RSet.tail(x.carrier, b.name, n) | x.set([b.limit])
            for b in x.carrier.blocks if b.limit for n in range(m + 4)]
    bad = next((c for c in fam if _trace_clopen(p, c) is None), None)
    out["topological_embedding"] = Verdict.ok(len(fam), x.is_finite) if bad is None else Verdict.fail(bad)
    reps = e.source_reps()
    bad = next(((a, b) for a in reps for b in reps if x.leq(a, b) != y.leq(e(a), e(b))), None)
    out["order_embedding"] = Verdict.ok(len(reps) ** 2, x.is_finite) if bad is None else Verdict.fail(bad)
    dense, w = is_dense_in(y, p.image, y.full)
    out["dense"] = Verdict.ok(1) if dense else Verdict.fail(w)
    out["nachbin"] = Verdict.ok(1) if is_nachbin(y) else Verdict.fail("Y is not compact with a closed order")
    return out


def n_order_direct(p: CompactificationPair) -> Verdict:
    """Finite Y: its order must be exactly the image of the order of X (closures are trivial)."""
    if not p.Y.is_finite:
        raise InvalidInput("direct N-order test needs a finite Y")
    x, y, e = p.X, p.Y, p.e
    img = {(e(a), e(b)) for a in x.carrier.points() for b in x.fin.up[a]}
    pts = y.carrier.points()
    for a in pts:
        for b in pts:
            if y.fin.leq(a, b) and (a, b) not in img:
                return Verdict.fail((a, b), len(pts) ** 2)
    return Verdict.ok(len(pts) ** 2)


def esakia_density(p: CompactificationPair) -> Verdict:
    """↑x taken in X is dense in ↑e(x) taken in Y."""
    x, y, e = p.X, p.Y, p.e
    reps = e.source_reps()
    for a in reps:
        dense, w = is_dense_in(y, e.image(x.up(a)), y.up(e(a)))
        if not dense:
            return Verdict.fail((a, w), len(reps))
    return Verdict.ok(len(reps), x.is_finite)


def classify_pair(p: CompactificationPair, support_bound: int = DEFAULT_SUPPORT_BOUND,
                  samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> dict:
    """Flags plus the verdicts behind them."""
    ok, bad = is_order_preserving(p.e)
    if not ok:
        raise InvalidInput(f"e is not order-preserving at {bad!r}")
    emb = check_embedding(p)
    oc = all(emb.values())
    ys = classify_space(p.Y)
    priestley = oc and ys["priestley"]
    heyting = priestley and ys["esakia"]
    density = esakia_density(p)
    esakia = heyting and bool(density)
    verdicts = dict(emb)
    verdicts["esakia_density"] = density
    if priestley:
        nb = check_n_basis(p, support_bound, samples, seed)
        verdicts["n_basis"] = nb
        n_order = bool(nb)
        if p.Y.is_finite:
            direct = n_order_direct(p)
            verdicts["n_order_direct"] = direct
            if bool(direct) != n_order:
                raise EngineBug(f"N-basis {nb.label} but direct N-order {direct.label}")
    else:
        n_order = False
    upset = p.Y.upclose(p.image) == p.image
    flags = {
        "order_compactification": oc,
        "n_order": n_order,
        "priestley": priestley,
        "heyting": heyting,
        "esakia": esakia,
        "X_upset_of_Y": upset,
    }
    return {"flags": flags, "verdicts": verdicts}


# finite constructions

@lru_cache(maxsize=None)
def eta0_finite(x: SpacePresentation) -> CompactificationPair:
    """Spectrum of the clopen upsets, with x ↦ {U : x ∈ U}."""
    if not x.is_finite:
        raise InvalidInput("eta0 is only constructed for finite spaces")
    if not classify_space(x)["order_zero_dimensional"]:
        raise InvalidInput("space is not order-zero-dimensional")
    iso = roundtrip_space(x)
    return CompactificationPair(x, iso.forward.target, iso.forward, "eta0")


def compactify_from_basis(x: SpacePresentation, r: UpsetRing) -> CompactificationPair:
    """Spec(R) with x ↦ {U ∈ R : x ∈ U}."""
    if not x.is_finite:
        raise InvalidInput("basis compactification is constructed for finite spaces")
    v = check_priestley_basis(r)
    if not v:
        raise InvalidInput(f"not a Priestley basis: {v.witness}")
    members = {set_name(x, frozenset(m)): frozenset(m) for m in r.enumerate()}
    lat = FinDLat.of_sets(members)
    sp = spec_space(lat)
    g = {}
    for p in x.carrier.points():
        q = sp.point_of(frozenset(n for n, u in members.items() if p in u))
        if q is None:
            raise EngineBug(f"{p!r} does not give a prime filter of the ring")
        g[p] = q
    return CompactificationPair(x, sp.space, SpaceMap.finite(x, sp.space, g), r.name or "basis")


def finite_priestley_bases(x: SpacePresentation) -> list[UpsetRing]:
    """Every Priestley basis of a finite space, by brute force over families of upsets."""
    fv = x.fin
    if fv.n > 4:
        raise InvalidInput("brute-force basis enumeration is limited to 4 points")
    ups = [sum(1 << fv.index[p] for p in u) for u in fv.upsets]
    full = (1 << fv.n) - 1
    inner = [u for u in ups if u not in (0, full)]
    pairs = [(fv.index[a], fv.index[b]) for a in fv.points for b in fv.points if not fv.leq(a, b)]
    out = []
    for k in range(len(inner) + 1):
        for chosen in combinations(inner, k):
            fam = set(chosen) | {0, full}
            if any(a | b not in fam or a & b not in fam for a in fam for b in fam):
                continue
            if not all(any(u >> i & 1 and not u >> j & 1 for u in fam) for i, j in pairs):
                continue
            # discrete topology: each point must be some U \ V
            if not all(any(u & ~v == 1 << i for u in fam for v in fam) for i in range(fv.n)):
                continue
            members = [x.set(fv.points[i] for i in range(fv.n) if u >> i & 1) for u in fam]
            out.append(UpsetRing.explicit(x, members))
    return out


# comparison

def compare_compactifications(p1: CompactificationPair, p2: CompactificationPair) -> SpaceMap | None:
    """The continuous order-preserving f : Y2 -> Y1 with f∘e2 = e1, if any.

    f is forced on the dense set e2[X] and extends to limits by continuity,
    so at most one candidate exists and it is built directly.
    """
    if p1.X != p2.X:
        raise InvalidInput("pairs compactify different spaces")
    x, y1, y2, e1, e2 = p1.X, p1.Y, p2.Y, p1.e, p2.e
    if not is_dense_in(y2, p2.image, y2.full)[0]:
        raise InvalidInput("second pair is not dense")
    named = {}
    for q in y2.carrier.named:
        pre = e2.preimage(y2.set([q]))
        if not pre.is_empty:
            named[q] = e1(pre.pick())
    rules = {}
    exceptions = {}
    for b in y2.carrier.blocks:
        srcs = [xb for xb in x.carrier.blocks if e2.rules[xb.name] == ("block", b.name)]
        if len(srcs) != 1:
            raise InvalidInput(f"block {b.name!r} of Y2 is not the image of one block of X")
        rule = e1.rules[srcs[0].name]
        rules[b.name] = rule
        if b.limit is not None and b.limit not in named:
            named[b.limit] = (y1.carrier.blocks[y1.carrier.block_index(rule[1])].limit
                              if rule[0] == "block" else rule[1])
    m = max(e1.bound(), e2.bound())
    for xp in representatives(x, bound=m):
        yp = e2(xp)
        if isinstance(yp, tuple) and _apply_rule(rules[yp[0]], yp) != e1(xp):
            exceptions[yp] = e1(xp)
    for q in y2.carrier.named:
        if q not in named:
            raise InvalidInput(f"point {q!r} of Y2 is neither in e2[X] nor a limit")
    f = SpaceMap(y2, y1, named, rules, exceptions)
    if any(f(e2(a)) != e1(a) for a in representatives(x, bound=max(m, f.bound()))):
        return None
    if not is_order_preserving(f)[0] or not is_continuous(f)[0]:
        return None
    if classify_pair(p1)["flags"]["esakia"] and classify_pair(p2)["flags"]["esakia"]:
        if not is_p_morphism(f):
            raise EngineBug("connecting map between Esakia compactifications is not a p-morphism")
    return f


def _apply_rule(rule, p):
    return (rule[1], p[1]) if rule[0] == "block" else rule[1]


# lifts

@dataclass
class _ZData:
    lat: FinDLat
    point_of: dict          # frozenset of clopen upset names -> point


@lru_cache(maxsize=None)
def _zdata(z: SpacePresentation) -> _ZData:
    lat = clopup_lattice(z)
    pts = {frozenset(n for n, u in lat.sets.items() if q in u): q for q in z.carrier.points()}
    return _ZData(lat, pts)


@lru_cache(maxsize=None)
def _xdata(x: SpacePresentation):
    lat = clopup_lattice(x)
    return lat, spec_space(lat)


@dataclass
class Lift:
    eta0: CompactificationPair
    route_a: dict
    route_b: dict
    map: SpaceMap


def lift(f: SpaceMap) -> Lift:
    """η₀f : η₀X -> Z by the intersection formula and by the dual of f⁻¹; both must agree."""
    x, z = f.source, f.target
    if not (x.is_finite and z.is_finite):
        raise InvalidInput("lifts are computed for finite spaces")
    if not is_order_preserving(f)[0]:
        raise InvalidInput("f is not order-preserving")
    if not classify_space(z)["priestley"]:
        raise InvalidInput("target is not Priestley")
    pair = eta0_finite(x)
    lat_x, sp = _xdata(x)
    zf = z.fin
    zd = _zdata(z)
    zpts = frozenset(z.carrier.points())
    img = {n: frozenset(f(p) for p in u) for n, u in lat_x.sets.items()}
    img_out = {n: frozenset(f(p) for p in x.carrier.points() if p not in u) for n, u in lat_x.sets.items()}
    route_a = {}
    for q, filt in sp.filters.items():
        cur = zpts
        for n in lat_x.elements:
            if n in filt:
                cur = cur & zf.upclose(img[n])
            else:
                cur = cur & zf.downclose(img_out[n])
        if len(cur) != 1:
            raise EngineBug(f"lift formula gives {sorted(cur)} at {q!r}")
        route_a[q] = next(iter(cur))
    pre = {w: set_name(x, frozenset(p for p in x.carrier.points() if f(p) in u))
           for w, u in zd.lat.sets.items()}
    route_b = {}
    for q, filt in sp.filters.items():
        back = frozenset(w for w in zd.lat.elements if pre[w] in filt)
        if back not in zd.point_of:
            raise EngineBug(f"dual of f⁻¹ misses a point at {q!r}")
        route_b[q] = zd.point_of[back]
    if route_a != route_b:
        raise EngineBug(f"lift routes disagree: {route_a} vs {route_b}")
    g = SpaceMap.finite(pair.Y, z, route_a)
    return Lift(pair, route_a, route_b, g)


def lift_competitors(res: Lift, f: SpaceMap, limit: int = 2) -> list[dict]:
    """Order-preserving g with g∘e = f, by backtracking over all assignments."""
    y, z, e = res.eta0.Y, f.target, res.eta0.e
    forced = {e(p): f(p) for p in f.source.carrier.points()}
    ypts = list(y.carrier.points())
    zpts = list(z.carrier.points())
    yf, zf = y.fin, z.fin
    found = []

    def rec(i, g):
        if len(found) >= limit:
            return
        if i == len(ypts):
            found.append(dict(g))
            return
        q = ypts[i]
        for v in ([forced[q]] if q in forced else zpts):
            if all(zf.leq(g[r], v) for r in yf.down[q] if r in g) and \
                    all(zf.leq(v, g[r]) for r in yf.up[q] if r in g):
                g[q] = v
                rec(i + 1, g)
                del g[q]
        # candidates outside the forced value are never tried for forced points,
        # which is exactly the constraint g∘e = f

    rec(0, {})
    return found


def check_lift_properties(f: SpaceMap, res: Lift | None = None) -> dict[str, Verdict]:
    res = lift(f) if res is None else res
    x, z = f.source, f.target
    y, g = res.eta0.Y, res.map
    sp = _xdata(x)[1]
    zd = _zdata(z)
    out = {}
    commutes = all(g(res.eta0.e(p)) == f(p) for p in x.carrier.points())
    out["commutes"] = Verdict.ok(len(x.carrier.points())) if commutes else Verdict.fail("g∘e != f")
    comps = lift_competitors(res, f)
    out["unique"] = Verdict.ok(len(comps)) if len(comps) == 1 and comps[0] == res.route_a \
        else Verdict.fail(comps)
    pre = {w: set_name(x, frozenset(p for p in x.carrier.points() if f(p) in u))
           for w, u in zd.lat.sets.items()}
    tested = 0
    bad = None
    for q, filt in sp.filters.items():
        for u, us in zd.lat.sets.items():
            for v, vs in zd.lat.sets.items():
                tested += 1
                lhs = g(q) in us and g(q) not in vs
                rhs = pre[u] in filt and pre[v] not in filt
                if lhs != rhs and bad is None:
                    bad = (q, u, v)
    out["difference_membership"] = Verdict.ok(tested) if bad is None else Verdict.fail(bad, tested)
    if is_p_morphism(f) and classify_space(z)["esakia"]:
        yf = y.fin
        bad = None
        for q in z.carrier.points():
            lhs = frozenset(p for p in yf.points if g(p) in z.fin.down[q])
            rhs = yf.downclose(p for p in yf.points if g(p) == q)
            if lhs != rhs:
                bad = q
                break
        out["p_morphism_preserved"] = Verdict.ok(len(z.carrier.points())) if bad is None else Verdict.fail(bad)
    return out


# Esakia's lemma

def is_down_directed(family: list[RSet]) -> bool:
    return all(any(c <= (a & b) for c in family) for a in family for b in family)


def esakia_lemma_check(x: SpacePresentation, family: list[RSet]) -> Verdict:
    """↓ of the intersection equals the intersection of the ↓'s."""
    if not family:
        raise InvalidInput("family must be nonempty")
    for s in family:
        if s.is_empty or not is_closed(x, s):
            raise InvalidInput(f"member {s} is empty or not closed")
    if not is_down_directed(family):
        raise InvalidInput("family is not down-directed")
    meet = family[0]
    for s in family[1:]:
        meet = meet & s
    lhs = x.downclose(meet)
    rhs = x.full
    for s in family:
        rhs = rhs & x.downclose(s)
    if lhs != rhs:
        return Verdict.fail((rhs - lhs).pick())
    return Verdict.ok(len(family))


def random_down_directed_family(x: SpacePresentation, rng: random.Random, size: int = 4) -> list[RSet]:
    """A random nonempty core with random supersets of it, so any two members contain the core."""
    pts = list(x.carrier.points())
    core = rng.sample(pts, rng.randint(1, len(pts)))
    fam = [x.set(core)]
    for _ in range(rng.randint(0, size)):
        fam.append(x.set(core + rng.sample(pts, rng.randint(0, len(pts)))))
    rng.shuffle(fam)
    return fam


# theorem suite

ROWS = (
    "heyting_characterisation", "esakia_characterisation", "claim", "esakia_implies_n",
    "continuity_iff_esakia_basis", "upset_iff_image_compact_and_esakia",
    "n_basis_iff_n_order", "special_facts", "left_adjoint",
)


def _row(lhs, rhs, kind: str = "iff") -> dict:
    if lhs is None or rhs is None:
        return {"lhs": lhs, "rhs": rhs, "agree": None}
    agree = (lhs == rhs) if kind == "iff" else (not lhs or rhs)
    return {"lhs": lhs, "rhs": rhs, "agree": agree}


def _claim_row(p: CompactificationPair, ring: UpsetRing, **kw) -> dict | None:
    """φ(E →_R F) = φ(E) →_ClopUp(Y) φ(F) on swept pairs.

    The ring side is the greatest member below the implication, found by
    brute force on finite rings and certified against the sweep otherwise.
    """
    sw = sweep_members(ring, **kw)
    y = p.Y
    for a, b in sw.pairs:
        if sw.exhaustive:
            cands = [g for g in sw.members if (g & a) <= b]
            top = [g for g in cands if all(h <= g for h in cands)]
            g = top[0] if top else None
        else:
            g = heyting_implication_in_ring(ring, a, b)
            if g is not None and (not (g & a) <= b or
                                  any((h & a) <= b and not h <= g for h in sw.members)):
                return {"lhs": False, "rhs": True, "agree": False, "witness": (a, b)}
        ua, ub = ring.to_target(a), ring.to_target(b)
        rhs = spatial_implication(y, ua, ub)
        if g is None or ring.to_target(g) != rhs:
            return {"lhs": False, "rhs": True, "agree": False, "witness": (a, b)}
    return {"lhs": True, "rhs": True, "agree": True, "tested": len(sw.pairs)}


def suite_instance(p: CompactificationPair, support_bound: int = DEFAULT_SUPPORT_BOUND,
                   samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> dict:
    kw = dict(support_bound=support_bound, samples=samples, seed=seed)
    cp = classify_pair(p, **kw)
    flags = cp["flags"]
    ring = UpsetRing.pullback(p)
    basis = bool(check_priestley_basis(ring))
    xs = classify_space(p.X)
    rows = {}
    if flags["priestley"]:
        rows["heyting_characterisation"] = _row(flags["heyting"], basis and bool(check_heyting_ring(ring, **kw)))
        rows["esakia_characterisation"] = _row(flags["esakia"], basis and bool(check_esakia_ring(ring, **kw)))
        rows["claim"] = _claim_row(p, ring, **kw) if flags["heyting"] else _row(None, None)
        rows["esakia_implies_n"] = _row(flags["esakia"], flags["n_order"], "implies")
        if flags["heyting"] and xs["order_zero_dimensional"]:
            rows["upset_iff_image_compact_and_esakia"] = _row(
                flags["X_upset_of_Y"], bool(check_image_compact(p.X)) and flags["esakia"])
        else:
            rows["upset_iff_image_compact_and_esakia"] = _row(None, None)
        if "n_order_direct" in cp["verdicts"]:
            rows["n_basis_iff_n_order"] = _row(bool(cp["verdicts"]["n_basis"]),
                                               bool(cp["verdicts"]["n_order_direct"]))
        else:
            rows["n_basis_iff_n_order"] = _row(None, None)
        # an Esakia compactification in which X is an upset forces X locally Esakia
        rows["special_facts"] = _row(flags["esakia"] and flags["X_upset_of_Y"], xs["locally_esakia"],
                                     "implies")
        if xs["locally_esakia"] and flags["esakia"] and flags["X_upset_of_Y"]:
            rows["left_adjoint"] = _row(True, bool(is_p_morphism(p.e)))
        else:
            rows["left_adjoint"] = _row(None, None)
    else:
        for r in ("heyting_characterisation", "esakia_characterisation", "claim", "esakia_implies_n",
                  "upset_iff_image_compact_and_esakia", "n_basis_iff_n_order", "special_facts",
                  "left_adjoint"):
            rows[r] = _row(None, None)
    if xs["order_zero_dimensional"]:
        cu = UpsetRing.clopen_upsets(p.X)
        rows["continuity_iff_esakia_basis"] = _row(
            xs["continuously_ordered"], bool(check_priestley_basis(cu)) and bool(check_esakia_ring(cu, **kw)))
    else:
        rows["continuity_iff_esakia_basis"] = _row(None, None)
    if p.X.is_finite:
        rows["special_facts_eta0"] = _finite_special_facts(p.X, xs)
    return {"name": p.name, "flags": flags, "rows": {k: rows[k] for k in sorted(rows)}}


def _finite_special_facts(x: SpacePresentation, xs: dict) -> dict:
    """Locally Esakia iff η₀X is an Esakia compactification with X an upset; plus the lift of the identity."""
    pair = eta0_finite(x)
    f = classify_pair(pair)["flags"]
    rhs = f["esakia"] and f["X_upset_of_Y"]
    if xs["locally_esakia"] and not is_p_morphism(pair.e):
        return {"lhs": True, "rhs": False, "agree": False}
    return _row(xs["locally_esakia"], rhs)


def theorem_suite(pairs: list[CompactificationPair], support_bound: int = DEFAULT_SUPPORT_BOUND,
                  samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> dict:
    kw = dict(support_bound=support_bound, samples=samples, seed=seed)
    instances = [suite_instance(p, **kw) for p in pairs]
    disagreements = [(inst["name"], row) for inst in instances
                     for row, v in inst["rows"].items() if v["agree"] is False]
    comparisons = []
    experiments = []
    flags = {id(p): inst["flags"] for p, inst in zip(pairs, instances)}
    for p1 in pairs:
        for p2 in pairs:
            if p1 is p2 or p1.X != p2.X or p1.X.is_finite:
                continue
            f = compare_compactifications(p1, p2)
            comparisons.append({"smaller": p1.name, "larger": p2.name, "connected": f is not None})
            f1, f2 = flags[id(p1)], flags[id(p2)]
            if f is not None and f1["heyting"] and f2["heyting"] and not (f1["esakia"] and f2["esakia"]):
                experiments.append({"smaller": p1.name, "larger": p2.name,
                                    "connecting_map_is_p_morphism": bool(is_p_morphism(f))})
    return {"instances": instances, "comparisons": comparisons, "experiments": experiments,
            "disagreements": disagreements}


def builtin_corpus(max_points: int = 4) -> list[CompactificationPair]:
    """Every finite poset up to ``max_points`` with each of its Priestley bases, then the infinite pairs."""
    from .corpus import finite_posets, infinite_pairs

    out = []
    for n in range(max_points + 1):
        for i, x in enumerate(finite_posets(n)):
            for j, r in enumerate(finite_priestley_bases(x)):
                p = compactify_from_basis(x, r)
                out.append(CompactificationPair(p.X, p.Y, p.e, f"poset{n}.{i}/basis{j}"))
    return out + infinite_pairs()
