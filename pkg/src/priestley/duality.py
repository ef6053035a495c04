"""Finite Priestley duality: spectra, clopen-upset lattices, round trips, p-morphisms."""

from __future__ import annotations

from dataclasses import dataclass

from .dlat import (
    FinDLat, heyting_implication, is_heyting_hom, is_lattice_hom, join_irreducibles,
    prime_filters, validate_dlat,
)
from .maps import SpaceMap, is_continuous, is_order_preserving
from .setalg import RSet
from .space import SpacePresentation
from .verdict import EngineBug, InvalidInput, Verdict


def set_name(space: SpacePresentation, s) -> str:
    """Canonical label of a finite set of points, e.g. ``{a,c}``."""
    return "{" + ",".join(p for p in space.carrier.points() if p in s) + "}"


@dataclass
class Spectrum:
    space: SpacePresentation
    phi: dict           # element -> RSet of prime filters containing it
    filters: dict       # point name -> frozenset of elements

    def point_of(self, f: frozenset) -> str | None:
        return next((p for p, g in self.filters.items() if g == f), None)


def spec_space(d: FinDLat, brute: bool = False) -> Spectrum:
    """Prime filters under inclusion.

    Points are named ``^j`` after the join-irreducible generating them.  With
    ``brute`` the filters come from subset enumeration and are matched back
    to their generators.
    """
    v = validate_dlat(d)
    if not v:
        raise InvalidInput(f"not a bounded distributive lattice: {v.witness}")
    jis = join_irreducibles(d)
    filters = {"^" + j: d.up(j) for j in jis}
    if brute:
        found = set(prime_filters(d))
        if found != set(filters.values()):
            raise EngineBug("prime filter enumeration disagrees with join-irreducibles")
    names = list(filters)
    pairs = [(p, q) for p in names for q in names if p != q and filters[p] <= filters[q]]
    space = SpacePresentation.finite_poset(names, pairs)
    phi = {a: RSet.of(space.carrier, [p for p in names if a in filters[p]]) for a in d.elements}
    return Spectrum(space, phi, filters)


def clopup_lattice(x: SpacePresentation) -> FinDLat:
    """Clopen upsets of a finite space under inclusion; members in ``.sets``."""
    if not x.is_finite:
        raise InvalidInput("clopen upsets are only enumerated for finite spaces")
    return FinDLat.of_sets({set_name(x, u): u for u in x.fin.upsets})


def spatial_implication(x: SpacePresentation, u: RSet, v: RSet) -> RSet:
    """X minus the down-closure of U \\ V."""
    return ~x.downclose(u - v)


def pointwise_implication(x: SpacePresentation, u: RSet, v: RSet) -> RSet:
    """Points whose up-set meets U only inside V."""
    return x.set(p for p in x.carrier.points() if (x.up(p) & u) <= v)


@dataclass
class SpaceIso:
    forward: SpaceMap
    backward: SpaceMap


def _check_inverse(f: SpaceMap, g: SpaceMap, what: str):
    for p in f.source.carrier.points():
        if g(f(p)) != p:
            raise EngineBug(f"{what}: maps are not mutually inverse at {p!r}")
    for q in g.source.carrier.points():
        if f(g(q)) != q:
            raise EngineBug(f"{what}: maps are not mutually inverse at {q!r}")


def roundtrip_space(x: SpacePresentation) -> SpaceIso:
    """x ↦ {U clopen upset : x ∈ U}, checked to be an order isomorphism onto the spectrum."""
    lat = clopup_lattice(x)
    sp = spec_space(lat)
    pts = x.carrier.points()
    fwd = {}
    for p in pts:
        f = frozenset(n for n, u in lat.sets.items() if p in u)
        q = sp.point_of(f)
        if q is None:
            raise EngineBug(f"{p!r} does not give a prime filter")
        fwd[p] = q
    back = {}
    for q, f in sp.filters.items():
        # the least member of the filter is the principal upset of the point
        least = min(f, key=lambda n: len(lat.sets[n]))
        gen = [p for p in pts if x.up(p) == x.set(lat.sets[least])]
        if len(gen) != 1:
            raise EngineBug(f"prime filter {q!r} is not principal at a point")
        back[q] = gen[0]
    iso = SpaceIso(SpaceMap.finite(x, sp.space, fwd), SpaceMap.finite(sp.space, x, back))
    _check_inverse(iso.forward, iso.backward, "space round trip")
    for p in pts:
        for r in pts:
            if x.leq(p, r) != sp.space.leq(fwd[p], fwd[r]):
                raise EngineBug(f"round trip does not reflect the order at {(p, r)}")
    return iso


@dataclass
class LatticeIso:
    forward: dict
    backward: dict
    source: FinDLat
    target: FinDLat


def roundtrip_lattice(d: FinDLat) -> LatticeIso:
    """a ↦ φ(a), checked to be a lattice isomorphism onto ClopUp(Spec D)."""
    sp = spec_space(d)
    lat = clopup_lattice(sp.space)
    fwd = {a: set_name(sp.space, sp.phi[a]) for a in d.elements}
    back = {}
    for name, u in lat.sets.items():
        hits = [a for a in d.elements if sp.space.set(u) == sp.phi[a]]
        if len(hits) != 1:
            raise EngineBug(f"clopen upset {name} is not φ of exactly one element")
        back[name] = hits[0]
    if any(back[fwd[a]] != a for a in d.elements) or any(fwd[back[n]] != n for n in lat.elements):
        raise EngineBug("lattice round trip maps are not mutually inverse")
    if not is_lattice_hom(fwd, d, lat) or not is_lattice_hom(back, lat, d):
        raise EngineBug("lattice round trip is not a homomorphism")
    return LatticeIso(fwd, back, d, lat)


# p-morphisms

def _route_forth(f: SpaceMap, xs, ys):
    for x in xs:
        fx = f(x)
        upx = f.source.up(x)
        for y in ys:
            if f.target.leq(fx, y) and upx.isdisjoint(f.preimage(f.target.set([y]))):
                return (x, y)
    return None


def _route_upsets(f: SpaceMap, xs):
    if f.source.is_finite:
        family = [f.source.set(u) for u in f.source.fin.upsets]
    else:
        # images of upsets are unions of images of principal upsets
        family = [f.source.up(x) for x in xs]
    for u in family:
        img = f.image(u)
        if not f.target.order.is_upset(img):
            return u
    return None


def _route_image(f: SpaceMap, xs):
    for x in xs:
        if not f.target.up(f(x)) <= f.image(f.source.up(x)):
            return x
    return None


def _route_preimage(f: SpaceMap, ys):
    for y in ys:
        lhs = f.preimage(f.target.down(y))
        rhs = f.source.downclose(f.preimage(f.target.set([y])))
        if not lhs <= rhs:
            return y
    return None


def _finite_routes(f: SpaceMap) -> dict:
    xf, yf = f.source.fin, f.target.fin
    g = {p: f(p) for p in xf.points}
    fibre = {q: frozenset(p for p in xf.points if g[p] == q) for q in yf.points}
    image = lambda s: frozenset(g[p] for p in s)
    forth = next(((x, y) for x in xf.points for y in yf.points
                  if y in yf.up[g[x]] and not (xf.up[x] & fibre[y])), None)
    ups = next((u for u in xf.upsets if yf.upclose(image(u)) != image(u)), None)
    img = next((x for x in xf.points if not yf.up[g[x]] <= image(xf.up[x])), None)
    pre = next((y for y in yf.points
                if not frozenset(p for p in xf.points if g[p] in yf.down[y]) <= xf.downclose(fibre[y])),
               None)
    return {"forth": forth, "upset_images": None if ups is None else f.source.set(ups),
            "up_image": img, "down_preimage": pre}


def p_morphism_routes(f: SpaceMap) -> dict:
    """Witness (or None) from each of the four characterisations."""
    if f.source.is_finite and f.target.is_finite:
        return _finite_routes(f)
    xs, ys = f.source_reps(), f.target_reps()
    return {
        "forth": _route_forth(f, xs, ys),
        "upset_images": _route_upsets(f, xs),
        "up_image": _route_image(f, xs),
        "down_preimage": _route_preimage(f, ys),
    }


def is_p_morphism(f: SpaceMap) -> Verdict:
    """All four characterisations must agree; the witness is a pair (x, y) with
    f(x) <= y and no x' >= x mapped to y."""
    ok, bad = is_order_preserving(f)
    if not ok:
        raise InvalidInput(f"map is not order-preserving at {bad!r}")
    routes = p_morphism_routes(f)
    verdicts = {k: w is None for k, w in routes.items()}
    if len(set(verdicts.values())) != 1:
        raise EngineBug(f"p-morphism characterisations disagree: {routes}")
    tested = len(f.source_reps())
    if routes["forth"] is None:
        return Verdict.ok(tested, exhaustive=f.source.is_finite and f.target.is_finite)
    return Verdict.fail(routes["forth"], tested)


@dataclass
class DualMap:
    hom: dict              # ClopUp(Y) name -> ClopUp(X) name
    source: FinDLat        # ClopUp(Y)
    target: FinDLat        # ClopUp(X)


def dual_of_map(f: SpaceMap) -> DualMap:
    """U ↦ f⁻¹(U), from ClopUp(target) to ClopUp(source)."""
    if not (f.source.is_finite and f.target.is_finite):
        raise InvalidInput("dual maps are built for finite spaces only")
    ok, bad = is_order_preserving(f)
    if not ok:
        raise InvalidInput(f"map is not order-preserving at {bad!r}")
    if not is_continuous(f)[0]:
        raise InvalidInput("map is not continuous")
    ly, lx = clopup_lattice(f.target), clopup_lattice(f.source)
    hom = {n: set_name(f.source, f.preimage(f.target.set(u))) for n, u in ly.sets.items()}
    return DualMap(hom, ly, lx)


def p_morphism_iff_heyting_hom(f: SpaceMap) -> dict:
    """p-morphism against Heyting hom of the dual, and injective dual against onto."""
    dm = dual_of_map(f)
    pm = is_p_morphism(f)
    hh = is_heyting_hom(dm.hom, dm.source, dm.target)
    if bool(pm) != bool(hh):
        raise EngineBug(f"p-morphism {pm.label} but dual Heyting hom {hh.label}")
    injective = len(set(dm.hom.values())) == len(dm.hom)
    onto = f.image(f.source.full) == f.target.full
    if injective != onto:
        raise EngineBug("dual injectivity does not match surjectivity")
    return {"p_morphism": pm, "heyting_hom": hh, "dual_injective": injective, "surjective": onto}


def implication_routes_agree(x: SpacePresentation) -> Verdict:
    """Algebraic implication in ClopUp(X) against the spatial formula, on all pairs."""
    lat = clopup_lattice(x)
    tested = 0
    for a in lat.elements:
        for b in lat.elements:
            tested += 1
            alg = lat.sets[heyting_implication(lat, a, b)]
            sp = spatial_implication(x, x.set(lat.sets[a]), x.set(lat.sets[b]))
            if x.set(alg) != sp:
                return Verdict.fail((a, b), tested)
    return Verdict.ok(tested)
