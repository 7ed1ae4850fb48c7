"""Graphviz DOT rendering of a tree, optionally labelled and matched."""

from __future__ import annotations

from typing import Optional

from .labelling import Labelling, LabellingError
from .tree import Matching, Tree


def to_dot(t: Tree, f: Optional[Labelling] = None, m: Optional[Matching] = None, name: str = "T") -> str:
    """Vertices captioned with their labels, edges with induced labels, matched edges bold."""
    if f is not None and f.n != t.n:
        raise LabellingError(f"labelling has {f.n} entries but tree has {t.n} vertices")
    if m is not None:
        m.check_in(t)
    out = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(t.n):
        if f is None:
            out.append(f'  {v} [label="{v}"];')
        else:
            out.append(f'  {v} [label="{f[v]}", xlabel="v{v}"];')
    for u, v in t.edges:
        attrs = []
        if f is not None:
            attrs.append(f'label="{abs(f[u] - f[v])}"')
        if m is not None and (u, v) in m:
            attrs += ["style=bold", "penwidth=3"]
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        out.append(f"  {u} -- {v}{suffix};")
    out.append("}")
    return "\n".join(out) + "\n"
