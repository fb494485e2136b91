"""Plain-text formats for algebras and h-forests.

Algebra files::

    algebra NAME
    elements e0 e1 ...
    one eK
    zero eJ          # optional
    imp              # n rows of n element names, row a lists a->b
    meet / join      # optional n x n blocks, same layout

Forest files::

    forest NAME
    nodes n0 n1 ...
    cover nA nB      # nA is covered by nB
    base { n0 n1 } { } ...

``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .forestspace import HForest, require_valid_forest
from .hilcore import Algebra, make_algebra
from .order import Poset, bits


@dataclass
class AlgebraDoc:
    name: str
    algebra: Algebra
    meet: tuple | None = None
    join: tuple | None = None


@dataclass
class ForestDoc:
    name: str
    forest: HForest


def _lines(text):
    """(line number, [(column, token)]) for every non-blank line, comments removed."""
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            out.append((no, toks))
    return out


def _header(lines, keyword):
    if not lines:
        raise ParseError(f"empty input, expected '{keyword} NAME'", 1, 1)
    no, toks = lines[0]
    if toks[0][1] != keyword or len(toks) != 2:
        raise ParseError(f"expected '{keyword} NAME'", no, toks[0][0])
    return toks[1][1]


def detect_kind(text):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1, 1)
    head = lines[0][1][0][1]
    if head not in ("algebra", "forest"):
        raise ParseError("expected 'algebra' or 'forest'", lines[0][0], 1)
    return head


def _names(no, toks, what):
    names = [t for _, t in toks[1:]]
    if not names:
        raise ParseError(f"'{what}' needs at least one name", no, toks[0][0])
    seen = set()
    for col, t in toks[1:]:
        if t in seen:
            raise ParseError(f"duplicate name {t!r}", no, col)
        seen.add(t)
    return names


def _lookup(pos, no, col, tok):
    if tok not in pos:
        raise ParseError(f"unknown element {tok!r}", no, col)
    return pos[tok]


def _read_table(lines, i, n, pos, keyword):
    rows = []
    for _ in range(n):
        if i >= len(lines):
            raise ParseError(f"'{keyword}' table ends early", lines[-1][0] + 1, 1)
        no, toks = lines[i]
        if len(toks) != n:
            raise ParseError(f"'{keyword}' row needs {n} entries, found {len(toks)}", no, toks[0][0])
        rows.append(tuple(_lookup(pos, no, col, t) for col, t in toks))
        i += 1
    return tuple(rows), i


def parse_algebra_doc(text):
    lines = _lines(text)
    name = _header(lines, "algebra")
    labels = one = zero = imp = meet = join = None
    pos = {}
    i = 1
    while i < len(lines):
        no, toks = lines[i]
        key = toks[0][1]
        if key == "elements":
            labels = _names(no, toks, "elements")
            pos = {t: k for k, t in enumerate(labels)}
            i += 1
        elif key in ("one", "zero"):
            if labels is None:
                raise ParseError(f"'{key}' before 'elements'", no, toks[0][0])
            if len(toks) != 2:
                raise ParseError(f"'{key}' takes one element name", no, toks[0][0])
            v = _lookup(pos, no, toks[1][0], toks[1][1])
            if key == "one":
                one = v
            else:
                zero = v
            i += 1
        elif key in ("imp", "meet", "join"):
            if labels is None:
                raise ParseError(f"'{key}' before 'elements'", no, toks[0][0])
            if len(toks) != 1:
                raise ParseError(f"'{key}' stands alone; rows follow", no, toks[1][0])
            table, i = _read_table(lines, i + 1, len(labels), pos, key)
            if key == "imp":
                imp = table
            elif key == "meet":
                meet = table
            else:
                join = table
        else:
            raise ParseError(f"unexpected keyword {key!r}", no, toks[0][0])
    for what, val in (("elements", labels), ("one", one), ("imp", imp)):
        if val is None:
            raise ParseError(f"missing '{what}'", lines[-1][0], 1)
    return AlgebraDoc(name, make_algebra(imp, one, zero, labels), meet, join)


def parse_algebra_file(text):
    """Parse and validate an algebra file."""
    return parse_algebra_doc(text).algebra


def parse_forest_doc(text):
    lines = _lines(text)
    name = _header(lines, "forest")
    labels = None
    pos = {}
    covers = []
    base = []
    for no, toks in lines[1:]:
        key = toks[0][1]
        if key == "nodes":
            labels = [t for _, t in toks[1:]]
            if len(set(labels)) != len(labels):
                raise ParseError("duplicate node name", no, toks[0][0])
            pos = {t: k for k, t in enumerate(labels)}
        elif key == "cover":
            if labels is None:
                raise ParseError("'cover' before 'nodes'", no, toks[0][0])
            if len(toks) != 3:
                raise ParseError("'cover' takes two node names", no, toks[0][0])
            a = _lookup(pos, no, toks[1][0], toks[1][1])
            b = _lookup(pos, no, toks[2][0], toks[2][1])
            covers.append((a, b))
        elif key == "base":
            if labels is None:
                raise ParseError("'base' before 'nodes'", no, toks[0][0])
            cur = None
            for col, t in toks[1:]:
                if t == "{}" and cur is None:
                    base.append(0)
                elif t == "{":
                    if cur is not None:
                        raise ParseError("nested '{'", no, col)
                    cur = 0
                elif t == "}":
                    if cur is None:
                        raise ParseError("unbalanced '}'", no, col)
                    base.append(cur)
                    cur = None
                else:
                    if cur is None:
                        raise ParseError("node name outside braces", no, col)
                    cur |= 1 << _lookup(pos, no, col, t)
            if cur is not None:
                raise ParseError("unclosed '{'", no, toks[-1][0])
        else:
            raise ParseError(f"unexpected keyword {key!r}", no, toks[0][0])
    if labels is None:
        raise ParseError("missing 'nodes'", lines[-1][0] if lines else 1, 1)
    P = Poset.from_covers(len(labels), covers)
    FS = HForest.make(P, base, labels)
    require_valid_forest(FS)
    return ForestDoc(name, FS)


def parse_forest_file(text):
    """Parse and validate a forest file."""
    return parse_forest_doc(text).forest


def _table_lines(A, table):
    return [" ".join(A.name(v) for v in row) for row in table]


def serialize_algebra(A, name="H", meet=None, join=None):
    out = [f"algebra {name}", "elements " + " ".join(A.name(a) for a in range(A.n)), f"one {A.name(A.one)}"]
    if A.zero is not None:
        out.append(f"zero {A.name(A.zero)}")
    out.append("imp")
    out += _table_lines(A, A.imp)
    if meet is not None:
        out += ["meet"] + _table_lines(A, meet)
    if join is not None:
        out += ["join"] + _table_lines(A, join)
    return "\n".join(out) + "\n"


def serialize_forest(FS, name="X"):
    out = [f"forest {name}", "nodes " + " ".join(FS.name(x) for x in range(FS.n))]
    for a, b in sorted(FS.poset.covers):
        out.append(f"cover {FS.name(a)} {FS.name(b)}")
    groups = ["{ " + " ".join(FS.name(x) for x in bits(B)) + (" }" if B else "}") for B in FS.base]
    out.append("base " + " ".join(groups))
    return "\n".join(out) + "\n"
