import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from priestley.compactify import eta0_finite
from priestley.corpus import bottom_pair, fig2_pair, flat_pair, poset_space, posets_up_to_iso
from priestley.pair import CompactificationPair
from priestley.rings import (
    UpsetRing, check_esakia_ring, check_heyting_ring, check_level, check_n_basis,
    check_priestley_basis, check_priestley_ring, check_ring, heyting_implication_in_ring,
    upset_implication,
)
from priestley.setalg import RSet, Trace
from priestley.space import SpacePresentation
from priestley.verdict import InvalidInput

from conftest import posets


def nat_sets(carrier):
    return st.builds(lambda cof, idx: RSet(carrier, (Trace(cof, frozenset(idx)),), frozenset()),
                     st.booleans(), st.frozensets(st.integers(0, 8), max_size=4))


FIG2 = fig2_pair()
NAT = FIG2.X.carrier
R_FIG2 = UpsetRing.pullback(FIG2)


def cof(*idx):
    return RSet.block(NAT, "N", True, idx)


def fin(*idx):
    return RSet.of(NAT, [("N", k) for k in idx])


def test_full_upset_ring_passes_the_ladder():
    for n in range(4):
        for rel in posets_up_to_iso(n):
            r = UpsetRing.all_upsets(poset_space(n, rel))
            assert check_ring(r) and check_priestley_ring(r) and check_priestley_basis(r)
            assert check_esakia_ring(r).status == "ok-exhaustive"


def test_fig2_pullback_is_a_priestley_basis():
    assert check_priestley_basis(R_FIG2)


def test_trivial_ring_on_antichain_does_not_separate():
    x = SpacePresentation.finite_poset(["a", "b"])
    r = UpsetRing.explicit(x, [x.empty, x.full])
    assert check_ring(r)
    v = check_priestley_ring(r)
    assert not v and set(v.witness) == {"a", "b"}


def test_ring_axiom_failures():
    x = SpacePresentation.finite_poset(["a", "b", "c"], [("a", "c")])
    assert check_ring(UpsetRing.explicit(x, [x.full])).witness[0] == "missing"
    assert check_ring(UpsetRing.explicit(x, [x.empty, x.full, x.set(["a"])])).witness[0] == "not an upset"
    r = UpsetRing.explicit(x, [x.empty, x.full, x.set(["b"]), x.set(["c"])])
    assert check_ring(r).witness[0] == "union"


def test_implication_of_a_member_with_itself_is_top():
    x = poset_space(3, {(0, 1)})
    r = UpsetRing.all_upsets(x)
    for u in r.members:
        assert heyting_implication_in_ring(r, u, u) == x.full


def test_fig2_implication_values():
    e = cof(0)
    assert heyting_implication_in_ring(R_FIG2, e, RSet.empty(NAT)) == RSet.empty(NAT)
    assert upset_implication(FIG2.X, e, RSet.empty(NAT)) == fin(0)
    assert not R_FIG2.contains(fin(0))


def test_fig2_heyting_but_not_esakia():
    assert check_heyting_ring(R_FIG2)
    v = check_esakia_ring(R_FIG2)
    assert not v and v.witness == (cof(0), RSet.empty(NAT))


def test_clopen_upsets_of_discrete_poset_form_esakia_ring():
    x = SpacePresentation.finite_poset(["a", "b", "c"])
    assert check_esakia_ring(UpsetRing.clopen_upsets(x))


def test_n_basis_examples():
    for n in range(4):
        for rel in posets_up_to_iso(n):
            assert check_n_basis(CompactificationPair.identity(poset_space(n, rel)))
    v = check_n_basis(FIG2)
    assert not v and v.witness == (fin(0), cof(0))
    # W empty is always satisfied by K empty
    assert R_FIG2.find_member(RSet.empty(NAT), cof(0)) == RSet.empty(NAT)


def test_level_dispatch():
    assert check_level(R_FIG2, "heyting", samples=20)
    assert not check_level(R_FIG2, "nbasis", samples=20)
    with pytest.raises(InvalidInput):
        check_level(R_FIG2, "bogus")
    with pytest.raises(InvalidInput):
        check_level(UpsetRing.all_upsets(poset_space(1, set())), "nbasis")


def test_explicit_ring_needs_matching_carrier():
    x = poset_space(2, set())
    with pytest.raises(InvalidInput):
        UpsetRing.explicit(x, [RSet.full(NAT)])
    with pytest.raises(InvalidInput):
        UpsetRing(x)


@given(nat_sets(NAT))
def test_pullback_membership_on_naturals(s):
    # fig2: the empty set and the cofinite sets
    assert R_FIG2.contains(s) == (s.is_empty or not s.is_finite)
    # flat: every finite or cofinite set
    assert UpsetRing.pullback(flat_pair()).contains(s)
    # added point below: finite sets and the whole of N
    assert UpsetRing.pullback(bottom_pair()).contains(s) == (s.is_finite or s == RSet.full(NAT))


@given(nat_sets(NAT), nat_sets(NAT))
def test_fig2_implication_oracle(e, f):
    if not (R_FIG2.contains(e) and R_FIG2.contains(f)):
        with pytest.raises(InvalidInput):
            heyting_implication_in_ring(R_FIG2, e, f)
        return
    got = heyting_implication_in_ring(R_FIG2, e, f)
    if e <= f:
        want = RSet.full(NAT)
    elif f.is_empty:
        want = RSet.empty(NAT)
    else:
        want = ~(e - f)
    assert got == want


@settings(max_examples=40, deadline=None)
@given(posets(max_n=4))
def test_pullback_ring_of_finite_pair_matches_brute_force(x):
    p = eta0_finite(x)
    ring = UpsetRing.pullback(p)
    pts = x.carrier.points()
    want = {frozenset(p.e.preimage(p.Y.set(u))) for u in p.Y.fin.upsets}
    got = {frozenset(m) for m in ring.enumerate()}
    assert got == want
    for m in range(1 << len(pts)):
        s = x.set(pts[i] for i in range(len(pts)) if m >> i & 1)
        assert ring.contains(s) == (frozenset(s) in want)


@settings(max_examples=40, deadline=None)
@given(posets(max_n=4), st.data())
def test_ring_implication_matches_brute_force(x, data):
    r = UpsetRing.all_upsets(x)
    e = data.draw(st.sampled_from(r.members))
    f = data.draw(st.sampled_from(r.members))
    g = heyting_implication_in_ring(r, e, f)
    assert g == upset_implication(x, e, f)
    best = [h for h in r.members if (h & e) <= f]
    assert all(h <= g for h in best)
