"""Graphviz DOT export for graphs, colour systems, templates and certificates."""

from __future__ import annotations

from collections.abc import Iterable

from .certificates import Certificate
from .local import BOT, ColouredGraph, MatchingOutput
from .systems import ColourSystem, FiniteColourSystem, RootedBall
from .templates import Template
from .words import Word, fmt


def _quote(s: str) -> str:
    # labels pass through DOT escapes such as \n untouched
    return '"' + s.replace('"', '\\"') + '"'


def _node_id(prefix: str, w: Word) -> str:
    return _quote(prefix + ("_".join(map(str, w)) if w else "e"))


def graph_to_dot(g: ColouredGraph, outputs: MatchingOutput | Iterable[int] | None = None, name: str = "G") -> str:
    outs = None
    if outputs is not None:
        outs = outputs.outputs if isinstance(outputs, MatchingOutput) else tuple(outputs)
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle];"]
    for v in range(g.n):
        label = str(v) if outs is None else f"{v}\\n{outs[v] if outs[v] != BOT else '⊥'}"
        lines.append(f"  {v} [label={_quote(label)}];")
    for u, v, c in g.edges:
        style = ""
        if outs is not None and outs[u] == c and outs[v] == c:
            style = ", penwidth=3"
        lines.append(f"  {u} -- {v} [label={_quote(str(c))}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _tree_lines(
    system: FiniteColourSystem, prefix: str, taus: dict[Word, int] | None = None, marks: Iterable[Word] = ()
) -> list[str]:
    marked = set(marks)
    lines = []
    for w in system.nodes:
        label = fmt(w)
        if taus is not None:
            label += f"\\nτ={taus[w]}"
        attrs = [f"label={_quote(label)}"]
        if not w:
            attrs.append("shape=doublecircle")
        if w in marked:
            attrs.append("style=filled, fillcolor=lightgrey")
        lines.append(f"  {_node_id(prefix, w)} [{', '.join(attrs)}];")
    for w in system.nodes:
        if w:
            lines.append(f"  {_node_id(prefix, w[:-1])} -- {_node_id(prefix, w)} [label={_quote(str(w[-1]))}];")
    return lines


def _finite(obj, depth: int | None) -> FiniteColourSystem:
    if isinstance(obj, RootedBall):
        return obj.system
    if isinstance(obj, FiniteColourSystem) and depth is None:
        return obj
    if depth is None:
        raise ValueError("an infinite system needs a depth to export")
    return obj.restrict_depth(depth)


def system_to_dot(system: ColourSystem | RootedBall, depth: int | None = None, name: str = "V") -> str:
    """Rooted tree drawing: root doubly circled, edges labelled by the child's tail colour."""
    fs = _finite(system, depth)
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle];"]
    lines += _tree_lines(fs, "v")
    lines.append("}")
    return "\n".join(lines) + "\n"


def template_to_dot(template: Template, depth: int, name: str | None = None) -> str:
    fs = template.system.restrict_depth(depth)
    taus = {w: template.forbidden(w) for w in fs.nodes}
    lines = [f"graph {_quote(name or template.name)} {{", "  node [shape=circle];"]
    lines += _tree_lines(fs, "t", taus)
    lines.append("}")
    return "\n".join(lines) + "\n"


def certificate_to_dot(cert: Certificate | dict) -> str:
    data = cert.data if isinstance(cert, Certificate) else cert
    k = data["k"]
    lines = [f"graph {_quote(data['kind'])} {{", "  node [shape=circle];"]
    if data["kind"] == "tightness":
        for label in ("U", "V"):
            fs = FiniteColourSystem(k, (tuple(w) for w in data[f"{label}_d"]))
            lines.append(f"  subgraph {_quote('cluster_' + label)} {{")
            caption = f"{label}[{data['d']}]  A(e)={data['outputs'][label]}"
            lines.append(f"    label={_quote(caption)};")
            lines += ["  " + s for s in _tree_lines(fs, label)]
            lines.append("  }")
    else:
        fs = FiniteColourSystem(k, (tuple(w) for w in data["W"]))
        viol = data["violation"]
        marks = [tuple(viol["node"])]
        if viol["neighbour"] is not None:
            marks.append(tuple(viol["neighbour"]))
        lines.append(f"  label={_quote(viol['condition'] + ' at ' + fmt(tuple(viol['node'])))};")
        lines += _tree_lines(fs, "w", marks=marks)
    lines.append("}")
    return "\n".join(lines) + "\n"
