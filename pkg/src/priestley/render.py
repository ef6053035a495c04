"""DOT drawings of spaces and compactification pairs.

Points of ``e[X]`` are filled, the rest of Y is hollow.  Blocks are drawn
through their first few representatives followed by a dotted ellipsis node.
"""

from __future__ import annotations

from .pair import CompactificationPair
from .setalg import Point
from .space import SpacePresentation, representatives


def node_id(p: Point) -> str:
    return f"{p[0]}:{p[1]}" if isinstance(p, tuple) else p


def _key(p: Point):
    return (0, p[0], p[1]) if isinstance(p, tuple) else (1, p, 0)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_edges(space: SpacePresentation, pts: list[Point]) -> list[tuple[Point, Point]]:
    """Covers among ``pts``: a < b with nothing from ``pts`` strictly between."""
    above = {a: [b for b in pts if b != a and space.leq(a, b)] for a in pts}
    out = []
    for a in pts:
        for b in above[a]:
            if not any(c != b and space.leq(c, b) for c in above[a]):
                out.append((a, b))
    return sorted(out, key=lambda e: (_key(e[0]), _key(e[1])))


def to_dot(space: SpacePresentation, filled=None, name: str = "space", bound: int | None = None) -> str:
    """``filled`` is a set of points to fill; by default every point is filled."""
    pts = sorted(representatives(space, bound=bound), key=_key)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;",
             '  node [shape=circle, width=0.25, fixedsize=true, label=""];']
    for p in pts:
        full = filled is None or p in filled
        style = 'style=filled, fillcolor=black' if full else 'style=solid, fillcolor=white'
        lines.append(f"  {_quote(node_id(p))} [{style}, xlabel={_quote(node_id(p))}];")
    for b in sorted(space.carrier.blocks, key=lambda b: b.name):
        lines.append(f'  {_quote(b.name + ":...")} [shape=plaintext, fixedsize=false, label="..."];')
    for a, b in hasse_edges(space, pts):
        lines.append(f"  {_quote(node_id(a))} -> {_quote(node_id(b))} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def pair_to_dot(p: CompactificationPair) -> str:
    return to_dot(p.Y, p.image, p.name or "pair", bound=max(p.e.bound(), 1))
