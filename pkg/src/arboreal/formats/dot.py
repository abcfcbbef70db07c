"""Graphviz DOT export with byte-stable output."""

from __future__ import annotations

from ..graph import UndirectedGraph, _sort_key
from ..network import ArborealNetwork
from ..rational import format_number


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(obj: ArborealNetwork | UndirectedGraph, name: str = "G") -> str:
    """Roots as double circles, leaves as labelled boxes, other vertices as points."""
    if isinstance(obj, ArborealNetwork):
        roots = set(obj.roots)
        lines = [f"digraph {_quote(name)} {{", "  rankdir=TB;"]
        for v in sorted(obj.vertices):
            if v in obj.labels:
                lines.append(f"  {v} [shape=box, label={_quote(obj.labels[v])}];")
            elif v in roots:
                lines.append(f'  {v} [shape=doublecircle, label="", width=0.2];')
            else:
                lines.append(f"  {v} [shape=point];")
        for (u, v), w in sorted(obj.arcs.items()):
            lines.append(f"  {u} -> {v} [label={_quote(format_number(w))}];")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, UndirectedGraph):
        ids = {v: i for i, v in enumerate(obj.sorted_vertices())}
        lines = [f"graph {_quote(name)} {{"]
        for v, i in ids.items():
            lines.append(f"  {i} [shape=box, label={_quote(obj.label(v))}];")
        pairs = sorted(tuple(sorted((ids[a], ids[b]))) for a, b in map(tuple, obj.edges))
        for a, b in pairs:
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")
