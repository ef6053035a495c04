"""JSON documents for carriers, sets, spaces, maps, pairs, lattices and rings.

Every top-level document carries ``"format": 1``.  Block points are written
as ``[block, index]``, named points as strings.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .dlat import FinDLat
from .maps import SpaceMap
from .pair import CompactificationPair
from .rings import UpsetRing
from .setalg import Block, Carrier, Point, RSet, Trace
from .space import SpacePresentation
from .verdict import InvalidInput, Verdict

FORMAT = 1


def load_json(path: str | Path) -> tuple[dict, str]:
    """Parsed document and the sha256 of the raw bytes."""
    raw = Path(path).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if not raw.strip():
        raise InvalidInput(f"{path}: empty document")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InvalidInput(f"{path}: top level must be an object")
    if doc.get("format") != FORMAT:
        raise InvalidInput(f"{path}: expected \"format\": {FORMAT}")
    return doc, digest


def need(doc: dict, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise InvalidInput(f"{where}: missing {key!r}")
    return doc[key]


# points and carriers

def point_from(x, where: str = "point") -> Point:
    if isinstance(x, str):
        return x
    if isinstance(x, list) and len(x) == 2 and isinstance(x[0], str) and isinstance(x[1], int) and x[1] >= 0:
        return (x[0], x[1])
    raise InvalidInput(f"{where}: bad point {x!r}")


def point_to(p: Point):
    return [p[0], p[1]] if isinstance(p, tuple) else p


def carrier_from(doc: dict) -> Carrier:
    kind = need(doc, "kind", "carrier")
    try:
        if kind == "finite":
            pts = doc.get("points", doc.get("n"))
            if pts is None:
                raise InvalidInput("carrier: finite carrier needs 'points' or 'n'")
            return Carrier.finite(pts)
        if kind == "tail":
            blocks = [Block(need(b, "name", "block"), b.get("limit")) for b in doc.get("blocks", [])]
            return Carrier.tail(blocks, doc.get("isolated", []))
    except ValueError as exc:
        raise InvalidInput(f"carrier: {exc}") from None
    raise InvalidInput(f"carrier: unknown kind {kind!r}")


def carrier_to(c: Carrier) -> dict:
    if c.is_finite:
        return {"kind": "finite", "points": list(c.isolated)}
    return {"kind": "tail", "blocks": [{"name": b.name, "limit": b.limit} for b in c.blocks],
            "isolated": list(c.isolated)}


# sets

def rset_from(c: Carrier, doc: dict) -> RSet:
    if not isinstance(doc, dict):
        raise InvalidInput(f"set: expected an object, got {doc!r}")
    pts = [point_from(p) for p in doc.get("points", [])]
    try:
        out = RSet.of(c, pts)
    except KeyError:
        raise InvalidInput(f"set: unknown point in {pts!r}") from None
    for key, val in doc.items():
        if key == "points":
            continue
        try:
            c.block_index(key)
        except KeyError:
            raise InvalidInput(f"set: unknown block {key!r}") from None
        if "finite" in val:
            t = Trace(False, frozenset(val["finite"]))
        elif "cofinite_except" in val:
            t = Trace(True, frozenset(val["cofinite_except"]))
        else:
            raise InvalidInput(f"set: block {key!r} needs 'finite' or 'cofinite_except'")
        if any(not isinstance(k, int) or k < 0 for k in t.indices):
            raise InvalidInput(f"set: bad indices in block {key!r}")
        out = out.with_trace(key, t)
    return out


def rset_to(s: RSet) -> dict:
    doc: dict[str, Any] = {}
    for b, t in zip(s.carrier.blocks, s.traces):
        if t.cofinite:
            doc[b.name] = {"cofinite_except": sorted(t.indices)}
        elif t.indices:
            doc[b.name] = {"finite": sorted(t.indices)}
    doc["points"] = sorted(s.points)
    return doc


# spaces

def space_from(doc: dict) -> SpacePresentation:
    c = carrier_from(need(doc, "carrier", "space"))
    rects = []
    for r in doc.get("order", {}).get("rectangles", []):
        rects.append((rset_from(c, need(r, "A", "rectangle")), rset_from(c, need(r, "B", "rectangle"))))
    for pr in doc.get("pairs", []):
        a, b = point_from(pr[0]), point_from(pr[1])
        rects.append((RSet.of(c, [a]), RSet.of(c, [b])))
    try:
        return SpacePresentation.build(c, rects)
    except (ValueError, KeyError) as exc:
        raise InvalidInput(f"space: {exc}") from None


def space_to(x: SpacePresentation) -> dict:
    return {"format": FORMAT, "carrier": carrier_to(x.carrier),
            "order": {"rectangles": [{"A": rset_to(a), "B": rset_to(b)} for a, b in x.order.rectangles]}}


# maps

def map_from(doc: dict, source: SpacePresentation, target: SpacePresentation) -> SpaceMap:
    named = {}
    exceptions = {}
    for pr in doc.get("graph", []):
        a, b = point_from(pr[0]), point_from(pr[1])
        if isinstance(a, tuple):
            exceptions[a] = b
        else:
            named[a] = b
    rules = {}
    for blk, rule in doc.get("rules", {}).items():
        if "block" in rule:
            rules[blk] = ("block", rule["block"])
        elif "point" in rule:
            rules[blk] = ("point", rule["point"])
        else:
            raise InvalidInput(f"map: rule for {blk!r} needs 'block' or 'point'")
    try:
        return SpaceMap(source, target, named, rules, exceptions)
    except (ValueError, KeyError) as exc:
        raise InvalidInput(f"map: {exc}") from None


def map_to(f: SpaceMap) -> dict:
    graph = [[p, point_to(q)] for p, q in sorted(f.named.items())]
    graph += [[point_to(p), point_to(q)] for p, q in sorted(f.exceptions.items())]
    doc: dict[str, Any] = {"graph": graph}
    if f.rules:
        doc["rules"] = {b: {r[0]: r[1]} for b, r in sorted(f.rules.items())}
    return doc


def map_doc_from(doc: dict) -> SpaceMap:
    src = space_from(need(doc, "source", "map"))
    tgt = space_from(need(doc, "target", "map"))
    return map_from(doc, src, tgt)


def map_doc_to(f: SpaceMap) -> dict:
    return {"format": FORMAT, "source": space_to(f.source), "target": space_to(f.target), **map_to(f)}


# pairs

def pair_from(doc: dict) -> CompactificationPair:
    x = space_from(need(doc, "X", "pair"))
    y = space_from(need(doc, "Y", "pair"))
    e = map_from(need(doc, "e", "pair"), x, y)
    return CompactificationPair(x, y, e, doc.get("name", ""))


def pair_to(p: CompactificationPair) -> dict:
    doc = {"format": FORMAT, "X": space_to(p.X), "Y": space_to(p.Y), "e": map_to(p.e)}
    if p.name:
        doc["name"] = p.name
    return doc


# lattices and rings

def lattice_from(doc: dict) -> FinDLat:
    els = [str(a) for a in need(doc, "elements", "lattice")]
    try:
        return FinDLat(els, [(str(a), str(b)) for a, b in doc.get("leq", [])])
    except (ValueError, KeyError) as exc:
        raise InvalidInput(f"lattice: {exc}") from None


def lattice_to(d: FinDLat) -> dict:
    n = len(d)
    return {"format": FORMAT, "elements": list(d.elements),
            "leq": [[d.elements[i], d.elements[j]] for i in range(n) for j in range(n)
                    if i != j and d.leq_matrix[i, j]]}


def ring_from(doc: dict, resolve=None) -> UpsetRing:
    """``resolve`` maps a string pair reference to a pair (builtin names, paths)."""
    if "explicit" in doc:
        x = space_from(need(doc, "space", "ring"))
        return UpsetRing.explicit(x, [rset_from(x.carrier, m) for m in doc["explicit"]], doc.get("name", ""))
    if "pullback" in doc:
        ref = doc["pullback"]
        if isinstance(ref, str):
            if resolve is None:
                raise InvalidInput(f"ring: cannot resolve pair reference {ref!r}")
            pair = resolve(ref)
        else:
            pair = pair_from(ref)
        return UpsetRing.pullback(pair, doc.get("name", ""))
    raise InvalidInput("ring: needs 'explicit' or 'pullback'")


def ring_to(r: UpsetRing) -> dict:
    if r.is_explicit:
        return {"format": FORMAT, "space": space_to(r.base), "explicit": [rset_to(m) for m in r.members]}
    return {"format": FORMAT, "pullback": pair_to(r.pair)}


# report values

def jsonable(v):
    """Plain JSON value for witnesses and verdicts."""
    if isinstance(v, RSet):
        return rset_to(v)
    if isinstance(v, Verdict):
        out = {"status": v.label}
        if v.witness is not None:
            out["witness"] = jsonable(v.witness)
        return out
    if isinstance(v, SpaceMap):
        return map_to(v)
    if isinstance(v, tuple):
        if len(v) == 2 and isinstance(v[0], str) and isinstance(v[1], int) and not isinstance(v[1], bool):
            return [v[0], v[1]]
        return [jsonable(a) for a in v]
    if isinstance(v, list):
        return [jsonable(a) for a in v]
    if isinstance(v, dict):
        return {str(k): jsonable(a) for k, a in v.items()}
    if isinstance(v, (frozenset, set)):
        return sorted((jsonable(a) for a in v), key=lambda a: json.dumps(a, sort_keys=True))
    return v
