"""Deterministic Graphviz DOT export of Hasse diagrams."""

from __future__ import annotations

from .forestspace import HForest
from .hilcore import Algebra, natural_order
from .order import Poset


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(obj, base=None, name="G"):
    """Hasse diagram (lower elements drawn below) of a Poset, an Algebra or an HForest.

    For an HForest, ``base=K`` fills the nodes of the K-th base set.
    """
    if isinstance(obj, Algebra):
        P, label = natural_order(obj), obj.name
    elif isinstance(obj, HForest):
        P, label = obj.poset, obj.name
    elif isinstance(obj, Poset):
        P, label = obj, str
    else:
        raise TypeError(f"cannot draw {type(obj).__name__}")
    marked = 0
    if base is not None:
        if not isinstance(obj, HForest):
            raise TypeError("base highlighting needs an HForest")
        if not 0 <= base < len(obj.base):
            raise IndexError(f"base index {base} out of range 0..{len(obj.base) - 1}")
        marked = obj.base[base]
    out = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(P.n):
        attrs = f"label={_quote(label(x))}"
        if marked >> x & 1:
            attrs += ", style=filled, fillcolor=lightgray"
        out.append(f"  n{x} [{attrs}];")
    for a, b in sorted(P.covers):
        out.append(f"  n{a} -> n{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def cover_edges(obj):
    P = natural_order(obj) if isinstance(obj, Algebra) else getattr(obj, "poset", obj)
    return sorted(P.covers)
