import random

import pytest
from hypothesis import given, settings

from priestley.compactify import (
    builtin_corpus, check_embedding, check_lift_properties, classify_pair, compactify_from_basis,
    compare_compactifications, esakia_lemma_check, eta0_finite, finite_priestley_bases,
    is_down_directed, lift, lift_competitors, random_down_directed_family, suite_instance,
    theorem_suite,
)
from priestley.corpus import (
    bottom_pair, capped_pair, fig2_identity_pair, fig2_pair, flat_pair, infinite_pairs,
    monotone_maps, naturals, poset_space, posets_up_to_iso, two_block_pair,
)
from priestley.duality import is_p_morphism, roundtrip_space
from priestley.maps import SpaceMap
from priestley.pair import CompactificationPair
from priestley.rings import UpsetRing
from priestley.space import SpacePresentation
from priestley.verdict import InvalidInput

from conftest import posets

ALL = dict.fromkeys(["order_compactification", "n_order", "priestley", "heyting", "esakia",
                     "X_upset_of_Y"], True)


def chain(*names):
    return SpacePresentation.finite_poset(list(names), list(zip(names, names[1:])))


def test_identity_on_finite_space_has_every_flag():
    x = poset_space(3, {(0, 1)})
    assert classify_pair(CompactificationPair.identity(x))["flags"] == ALL


def test_fig2_flags():
    c = classify_pair(fig2_pair())
    assert c["flags"] == dict(ALL, n_order=False, esakia=False, X_upset_of_Y=False)
    assert c["verdicts"]["esakia_density"].witness == (("N", 0), "inf")


def test_fig2_identity_is_esakia_upset():
    f = classify_pair(fig2_identity_pair())["flags"]
    assert f["esakia"] and f["X_upset_of_Y"]


def test_other_infinite_pairs():
    f = classify_pair(flat_pair())["flags"]
    assert f == ALL
    f = classify_pair(bottom_pair())["flags"]
    assert f["priestley"] and not f["heyting"] and f["X_upset_of_Y"]
    f = classify_pair(two_block_pair())["flags"]
    assert f["esakia"] and not f["X_upset_of_Y"]
    assert classify_pair(capped_pair())["flags"]["order_compactification"]


def test_embedding_failures():
    y = poset_space(2, set())
    x = poset_space(1, set())
    e = SpaceMap.finite(x, y, {"0": "0"})
    emb = check_embedding(CompactificationPair(x, y, e))
    assert not emb["dense"] and emb["injective"]
    x2 = poset_space(2, set())
    e = SpaceMap.finite(x2, x, {"0": "0", "1": "0"})
    emb = check_embedding(CompactificationPair(x2, x, e))
    assert not emb["injective"]
    assert not classify_pair(CompactificationPair(x2, x, e))["flags"]["order_compactification"]


def test_eta0_examples():
    one = poset_space(1, set())
    p = eta0_finite(one)
    assert len(p.Y.carrier.points()) == 1
    c2 = chain("lo", "hi")
    p = eta0_finite(c2)
    assert p.Y.leq(p.e("lo"), p.e("hi")) and not p.Y.leq(p.e("hi"), p.e("lo"))
    with pytest.raises(InvalidInput):
        eta0_finite(naturals())


@pytest.mark.parametrize("n", range(5))
def test_eta0_is_an_order_isomorphism(n):
    for rel in posets_up_to_iso(n):
        x = poset_space(n, rel)
        p = eta0_finite(x)
        pts = x.carrier.points()
        assert sorted(p.e(a) for a in pts) == sorted(p.Y.carrier.points())
        assert all(x.leq(a, b) == p.Y.leq(p.e(a), p.e(b)) for a in pts for b in pts)
        assert classify_pair(p)["flags"] == ALL


def test_basis_of_all_upsets_reproduces_eta0():
    x = chain("a", "b", "c")
    p = compactify_from_basis(x, UpsetRing.all_upsets(x))
    q = eta0_finite(x)
    assert p.Y.carrier.points() == q.Y.carrier.points()
    assert all(p.e(a) == q.e(a) for a in x.carrier.points())


def test_antichain_basis():
    x = SpacePresentation.finite_poset(["a", "b"])
    r = UpsetRing.explicit(x, [x.empty, x.set(["a"]), x.set(["b"]), x.full])
    p = compactify_from_basis(x, r)
    assert len(p.Y.carrier.points()) == 2 and not p.Y.leq(p.e("a"), p.e("b"))
    with pytest.raises(InvalidInput):
        compactify_from_basis(x, UpsetRing.explicit(x, [x.empty, x.full]))


@pytest.mark.parametrize("n", range(5))
def test_finite_space_has_exactly_one_basis(n):
    # a basis must contain every principal upset, so it is all of Up(X)
    for rel in posets_up_to_iso(n):
        x = poset_space(n, rel)
        bases = finite_priestley_bases(x)
        assert [b.members for b in bases] == [UpsetRing.all_upsets(x).members]


def test_compare_with_itself_gives_identity():
    for p in (fig2_pair(), eta0_finite(chain("a", "b"))):
        f = compare_compactifications(p, p)
        assert f is not None
        assert all(f(q) == q for q in f.target_reps())


def test_eta0_against_basis_compactification():
    x = chain("a", "b", "c")
    p1 = compactify_from_basis(x, UpsetRing.all_upsets(x))
    p2 = eta0_finite(x)
    assert compare_compactifications(p1, p2) is not None
    assert compare_compactifications(p2, p1) is not None


def test_comparisons_between_compactifications_of_naturals():
    fig2, flat, bottom = fig2_pair(), flat_pair(), bottom_pair()
    f = compare_compactifications(fig2, flat)
    assert f is not None and f("inf") == "inf"
    # both are Heyting, flat is Esakia, fig2 is not; the map is no p-morphism
    assert not is_p_morphism(f)
    assert compare_compactifications(bottom, flat) is not None
    assert compare_compactifications(flat, fig2) is None
    assert compare_compactifications(fig2, bottom) is None
    assert compare_compactifications(bottom, fig2) is None
    with pytest.raises(InvalidInput):
        compare_compactifications(fig2, eta0_finite(chain("a")))


def test_lift_of_identity_is_canonical_iso():
    x = chain("a", "b")
    res = lift(SpaceMap.identity(x))
    iso = roundtrip_space(x)
    assert all(res.map(q) == iso.backward(q) for q in res.eta0.Y.carrier.points())


def test_lift_to_a_point_is_constant():
    x = SpacePresentation.finite_poset(["a", "b"])
    z = SpacePresentation.finite_poset(["*"])
    res = lift(SpaceMap.finite(x, z, {"a": "*", "b": "*"}))
    assert set(res.route_a.values()) == {"*"}


def test_lift_of_chain_surjection():
    x = chain("0", "1", "2")
    z = chain("lo", "hi")
    f = SpaceMap.finite(x, z, {"0": "lo", "1": "hi", "2": "hi"})
    res = lift(f)
    iso = roundtrip_space(x)
    assert res.route_a == res.route_b
    assert all(res.map(q) == f(iso.backward(q)) for q in res.eta0.Y.carrier.points())
    props = check_lift_properties(f, res)
    assert all(props.values()) and "p_morphism_preserved" in props
    assert props["difference_membership"].tested == 3 * 3 * 3
    assert len(lift_competitors(res, f)) == 1


def test_lift_properties_for_non_p_morphism():
    x = SpacePresentation.finite_poset(["a", "b"])
    z = chain("bot", "top")
    f = SpaceMap.finite(x, z, {"a": "bot", "b": "top"})
    props = check_lift_properties(f)
    assert props["difference_membership"] and props["unique"] and props["commutes"]
    assert "p_morphism_preserved" not in props


def test_lift_rejects_bad_input():
    c = chain("a", "b")
    with pytest.raises(InvalidInput):
        lift(SpaceMap.finite(c, c, {"a": "b", "b": "a"}))
    with pytest.raises(InvalidInput):
        lift(fig2_pair().e)


def test_esakia_lemma_examples():
    x = chain("a", "b", "c")
    s = x.set(["b", "c"])
    assert esakia_lemma_check(x, [s])
    assert esakia_lemma_check(x, [x.up("a"), x.up("b")])
    with pytest.raises(InvalidInput):
        esakia_lemma_check(x, [])
    anti = SpacePresentation.finite_poset(["a", "b"])
    assert not is_down_directed([anti.set(["a"]), anti.set(["b"])])
    with pytest.raises(InvalidInput):
        esakia_lemma_check(anti, [anti.set(["a"]), anti.set(["b"])])


def test_random_families_are_down_directed():
    rng = random.Random(3)
    for _ in range(50):
        x = poset_space(4, {(0, 1), (2, 3)})
        assert is_down_directed(random_down_directed_family(x, rng))


def test_fig2_suite_row():
    inst = suite_instance(fig2_pair(), samples=50)
    f = inst["flags"]
    assert (f["heyting"], f["esakia"], f["n_order"]) == (True, False, False)
    assert all(r["agree"] is not False for r in inst["rows"].values())


@pytest.mark.parametrize("n", range(5))
def test_identity_compactifications_of_small_posets(n):
    for rel in posets_up_to_iso(n):
        inst = suite_instance(CompactificationPair.identity(poset_space(n, rel)))
        f = inst["flags"]
        assert f["esakia"] and f["n_order"] and f["X_upset_of_Y"]
        assert all(r["agree"] is not False for r in inst["rows"].values())


def test_empty_space_is_vacuously_fine():
    empty = SpacePresentation.finite_poset([])
    inst = suite_instance(CompactificationPair.identity(empty))
    assert inst["flags"] == ALL


def test_suite_experiment_on_naturals():
    s = theorem_suite([fig2_pair(), flat_pair(), bottom_pair()], samples=50)
    assert s["disagreements"] == []
    assert s["experiments"] == [{"smaller": "fig2", "larger": "flat", "connecting_map_is_p_morphism": False}]


def test_builtin_corpus_size():
    c = builtin_corpus()
    assert len(c) == 1 + 1 + 2 + 5 + 16 + len(infinite_pairs())


@settings(max_examples=25, deadline=None)
@given(posets(max_n=3), posets(max_n=3, min_n=1))
def test_lift_routes_agree_on_random_maps(x, z):
    maps = monotone_maps(x, z)
    for f in maps[:10]:
        res = lift(f)
        assert all(check_lift_properties(f, res).values())
