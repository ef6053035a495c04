import io
import json
from importlib.resources import files

import pytest

from priestley import docs
from priestley.cli import run
from priestley.corpus import fig2_pair, infinite_pairs, poset_space
from priestley.duality import clopup_lattice
from priestley.maps import SpaceMap
from priestley.rings import UpsetRing, check_esakia_ring, upset_implication
from priestley.setalg import RSet
from priestley.verdict import InvalidInput

DATA = files("priestley") / "data"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_pair_documents_round_trip():
    for p in infinite_pairs():
        q = docs.pair_from(json.loads(json.dumps(docs.pair_to(p))))
        assert (q.X, q.Y, q.e, q.name) == (p.X, p.Y, p.e, p.name)


def test_ring_and_map_documents_round_trip():
    x = poset_space(3, {(0, 1)})
    r = UpsetRing.all_upsets(x)
    assert docs.ring_from(json.loads(json.dumps(docs.ring_to(r)))).members == r.members
    f = SpaceMap.finite(x, x, {"0": "1", "1": "1", "2": "2"})
    assert docs.map_doc_from(json.loads(json.dumps(docs.map_doc_to(f)))) == f
    d = clopup_lattice(x)
    back = docs.lattice_from(docs.lattice_to(d))
    assert back.elements == d.elements and (back.leq_matrix == d.leq_matrix).all()


def test_shipped_fig2_fixture_is_the_builtin():
    doc = json.loads((DATA / "fig2.pair.json").read_text())
    p = docs.pair_from(doc)
    assert (p.X, p.Y, p.e) == (fig2_pair().X, fig2_pair().Y, fig2_pair().e)


@pytest.mark.parametrize("doc", [
    {"kind": "weird"},
    {"kind": "tail", "blocks": [{"name": "N", "limit": None}, {"name": "N", "limit": None}]},
])
def test_bad_carriers(doc):
    with pytest.raises(InvalidInput):
        docs.carrier_from(doc)


def test_bad_sets_and_points():
    c = fig2_pair().Y.carrier
    for doc in ({"points": ["nope"]}, {"M": {"finite": [0]}}, {"N": {"finite": [-1]}},
                {"N": {}}, ["not", "an", "object"]):
        with pytest.raises(InvalidInput):
            docs.rset_from(c, doc)
    with pytest.raises(InvalidInput):
        docs.point_from(["N", "x"])


def test_load_json_errors(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    with pytest.raises(InvalidInput, match="empty"):
        docs.load_json(empty)
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": 1,\n  oops}')
    with pytest.raises(InvalidInput, match=r"bad.json:2:3"):
        docs.load_json(bad)
    old = tmp_path / "old.json"
    old.write_text('{"format": 0}')
    with pytest.raises(InvalidInput, match="format"):
        docs.load_json(old)


def test_cli_invalid_input_exit_codes(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    code, _, err = cli("pair-classify", empty)
    assert code == 2 and "empty" in err
    assert cli("classify", tmp_path / "missing.json")[0] == 2
    assert cli("pair-classify", "builtin:nosuch")[0] == 2
    assert cli("classify", DATA / "fig2.space.json", "--format", "dot")[0] == 2


def test_cli_pair_classify_fig2():
    code, out, _ = cli("pair-classify", DATA / "fig2.pair.json", "--format", "json")
    assert code == 1
    rep = json.loads(out)
    f = rep["result"]["flags"]
    assert f["heyting"] and not f["esakia"] and not f["n_order"]
    nb = rep["checks"]["n_basis"]
    assert nb["status"] == "counterexample"
    assert nb["witness"] == [{"N": {"finite": [0]}, "points": []}, {"N": {"cofinite_except": [0]}, "points": []}]
    assert cli("pair-classify", DATA / "fig2.pair.json", "--expect-fail")[0] == 0
    assert cli("pair-classify", DATA / "flat.pair.json")[0] == 0
    assert cli("pair-classify", DATA / "flat.pair.json", "--expect-fail")[0] == 1


def test_witnesses_replay():
    p = fig2_pair()
    ring = UpsetRing.pullback(p)
    _, out, _ = cli("pair-classify", DATA / "fig2.pair.json", "--format", "json")
    w, v = (docs.rset_from(p.X.carrier, d) for d in json.loads(out)["checks"]["n_basis"]["witness"])
    assert ring.find_member(w, v) is None
    _, out, _ = cli("ring-check", DATA / "fig2-pullback.ring.json", "--level", "esakia", "--format", "json")
    e, f = (docs.rset_from(p.X.carrier, d) for d in json.loads(out)["checks"]["esakia"]["witness"])
    assert not ring.contains(upset_implication(p.X, e, f))
    assert not check_esakia_ring(ring)


def test_cli_ring_checks():
    assert cli("ring-check", DATA / "fig2-pullback.ring.json", "--level", "heyting", "--samples", "30")[0] == 0
    assert cli("ring-check", DATA / "vee-unseparated.ring.json", "--level", "priestley")[0] == 1
    assert cli("ring-check", DATA / "vee-up.ring.json", "--level", "basis")[0] == 0


def test_cli_constructions():
    code, out, _ = cli("compactify", DATA / "vee.space.json", "--basis", DATA / "vee-up.ring.json",
                       "--format", "json")
    assert code == 0
    pair = docs.pair_from(json.loads(out)["result"]["pair"])
    assert len(pair.Y.carrier.points()) == 3
    code, _, _ = cli("compactify", DATA / "vee.space.json", "--basis", DATA / "vee-unseparated.ring.json")
    assert code == 1
    assert cli("eta0", DATA / "vee.space.json")[0] == 0
    assert cli("classify", DATA / "fig2.space.json")[0] == 0


def test_cli_compare_and_lift(tmp_path):
    assert cli("compare", "builtin:fig2", "builtin:flat")[0] == 0
    assert cli("compare", "builtin:flat", "builtin:fig2")[0] == 1
    x = poset_space(3, {(0, 1), (0, 2)})
    z = poset_space(2, {(0, 1)})
    f = SpaceMap.finite(x, z, {"0": "0", "1": "1", "2": "1"})
    path = tmp_path / "f.map.json"
    path.write_text(json.dumps(docs.map_doc_to(f)))
    code, out, _ = cli("lift", path, "--format", "json")
    assert code == 0
    assert all(v["status"].startswith("ok") for v in json.loads(out)["checks"].values())


def test_cli_lemma_check(tmp_path):
    assert cli("lemma-check", "--random", "50", "--seed", "4")[0] == 0
    x = poset_space(3, {(0, 1), (1, 2)})
    doc = {"format": 1, "space": docs.space_to(x),
           "family": [docs.rset_to(x.set(["1", "2"])), docs.rset_to(x.set(["2"]))]}
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(doc))
    assert cli("lemma-check", path)[0] == 0
    assert cli("lemma-check")[0] == 2


def test_cli_render_is_stable():
    code, out, _ = cli("render", DATA / "fig2.pair.json")
    assert code == 0 and out.startswith('digraph "fig2"')
    assert '"inf" [style=solid' in out and '"N:0" [style=filled' in out
    assert '"N:0" -> "inf"' in out
    assert cli("render", DATA / "fig2.pair.json")[1] == out
    code, out, _ = cli("render", DATA / "vee.space.json")
    assert code == 0 and out.count("->") == 2


def test_cli_suite_on_a_file(tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps({"format": 1, "pairs": [docs.pair_to(fig2_pair())]}))
    code, out, _ = cli("suite", "--corpus", path, "--samples", "20", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["disagreements"] == []


def test_timings_are_opt_in():
    _, out, _ = cli("pair-classify", "builtin:flat", "--format", "json")
    assert "timings" not in json.loads(out)
    _, out, _ = cli("pair-classify", "builtin:flat", "--format", "json", "--timings")
    assert "elapsed_s" in json.loads(out)["timings"]


def test_jsonable_handles_report_values():
    x = poset_space(2, set())
    v = docs.jsonable({"a": (x.set(["0"]), ("N", 3)), "b": frozenset({"q", "p"})})
    assert v == {"a": [{"points": ["0"]}, ["N", 3]], "b": ["p", "q"]}
    assert isinstance(docs.jsonable(RSet.full(x.carrier)), dict)
