"""Graphviz export: places as ellipses, transitions as boxes, boundary points as dots."""

from __future__ import annotations

from .opennet import OpenPetriNet


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: OpenPetriNet, name: str = "net") -> str:
    """Render ``p`` in the dot language.

    One arc per nonzero coefficient, labelled with its weight when it is
    larger than one.  Input points sit on the left, output points on the
    right, joined to their places by dashed edges.
    """
    net = p.net
    out = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for a in net.sorted_places():
        out.append(f"  {_q('place:' + a)} [shape=ellipse, label={_q(a)}];")
    for t in net.sorted_transitions():
        out.append(f"  {_q('transition:' + t)} [shape=box, label={_q(t)}];")
    for side, fn in (("in", p.input_map), ("out", p.output_map)):
        for x in sorted(fn):
            out.append(f"  {_q(side + ':' + x)} [shape=point, xlabel={_q(x)}];")
    for t in net.sorted_transitions():
        for a, n in net.source[t].items():
            out.append(f"  {_q('place:' + a)} -> {_q('transition:' + t)}{_weight(n)};")
        for a, n in net.target[t].items():
            out.append(f"  {_q('transition:' + t)} -> {_q('place:' + a)}{_weight(n)};")
    for x in sorted(p.input_map):
        out.append(f"  {_q('in:' + x)} -> {_q('place:' + p.input_map[x])} [style=dashed, arrowhead=none];")
    for y in sorted(p.output_map):
        out.append(f"  {_q('out:' + y)} -> {_q('place:' + p.output_map[y])} [style=dashed, arrowhead=none];")
    out.append("}")
    return "\n".join(out) + "\n"


def _weight(n: int) -> str:
    return f" [label={n}]" if n > 1 else ""
