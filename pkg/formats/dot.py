"""
formats/dot.py
Graphviz text for Hasse diagrams: one node per element, one edge per cover, drawn upward.
"""

from order.poset import FinPoset


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(X: FinPoset, name: str = "poset") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for i in range(X.n):
        lines.append(f"  {i} [label={_quote(X.label(i))}];")
    for i, j in X.hasse_edges:
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
