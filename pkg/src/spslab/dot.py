"""Graphviz DOT text for order diagrams and point-line incidence."""

from __future__ import annotations

from .bits import members
from .lattice import PropertyLattice


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse(L: PropertyLattice, title: str = "lattice", highlight: set[int] | None = None) -> str:
    """Covering relation drawn bottom to top."""
    lines = [f"digraph {_q(title)} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for a in L.elements:
        style = ", style=filled, fillcolor=lightgrey" if highlight and a in highlight else ""
        lines.append(f"  n{a} [label={_q(L.names[a])}{style}];")
    for a, b in L.hasse_edges:
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def incidence(points: tuple[str, ...], lines_: tuple[int, ...], title: str = "geometry") -> str:
    """Bipartite graph: one node per point, one per line."""
    out = [f"graph {_q(title)} {{", "  node [fontname=monospace];"]
    for i, p in enumerate(points):
        out.append(f"  p{i} [label={_q(p)}, shape=circle];")
    for j, line in enumerate(lines_):
        label = "{" + ",".join(points[i] for i in members(line)) + "}"
        out.append(f"  l{j} [label={_q(label)}, shape=box];")
        for i in members(line):
            out.append(f"  l{j} -- p{i};")
    out.append("}")
    return "\n".join(out) + "\n"
