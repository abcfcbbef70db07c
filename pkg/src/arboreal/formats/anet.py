"""The ``anet`` line format for weighted arboreal networks.

::

    anet 1              # or "anet 1 relaxed"
    leaf 3 a
    arc 1 3 1/2

Vertex ids are positive integers local to the file. ``#`` starts a comment.
"""

from __future__ import annotations

import re

from ..network import ArborealNetwork, validate
from ..rational import format_number, parse_number
from .diagnostics import ParseDiagnostic, ParseError

_LABEL = re.compile(r"^[A-Za-z0-9_]+$")
_ID = re.compile(r"^[0-9]+$")


def _tokens(line: str):
    """(column, token) pairs, comments stripped."""
    body = line.split("#", 1)[0]
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]


def parse_anet(text: str, *, relaxed: bool | None = None) -> ArborealNetwork:
    """Parse and validate; the header decides strict or relaxed mode unless ``relaxed`` is given."""

    def fail(line, col, message, expected=""):
        raise ParseError(ParseDiagnostic(line, col, message, expected))

    header_seen = False
    mode_relaxed = False
    arcs: dict = {}
    labels: dict = {}
    label_line: dict = {}
    first_use: dict = {}  # vertex -> (line, column)
    lines = text.splitlines()

    def vertex(tok, lineno, col):
        if not _ID.match(tok) or int(tok) == 0:
            fail(lineno, col, f"bad vertex id {tok!r}", "a positive integer")
        v = int(tok)
        first_use.setdefault(v, (lineno, col))
        return v

    for lineno, raw in enumerate(lines, 1):
        toks = _tokens(raw)
        if not toks:
            continue
        col, kw = toks[0]
        if not header_seen:
            words = [t for _, t in toks]
            if words[:2] != ["anet", "1"] or len(words) > 3 or (len(words) == 3 and words[2] != "relaxed"):
                fail(lineno, col, "missing or unsupported header", "'anet 1' or 'anet 1 relaxed'")
            header_seen = True
            mode_relaxed = len(words) == 3
            continue
        if kw == "leaf":
            if len(toks) != 3:
                fail(lineno, col, f"leaf line needs 2 fields, got {len(toks) - 1}", "leaf <vid> <label>")
            v = vertex(toks[1][1], lineno, toks[1][0])
            lab_col, lab = toks[2]
            if not _LABEL.match(lab):
                fail(lineno, lab_col, f"bad label {lab!r}", "[A-Za-z0-9_]+")
            if v in labels:
                fail(lineno, toks[1][0], f"vertex {v} labelled twice")
            if lab in label_line:
                fail(lineno, lab_col, f"duplicate leaf label {lab!r} (first on line {label_line[lab]})")
            labels[v] = lab
            label_line[lab] = lineno
        elif kw == "arc":
            if len(toks) != 4:
                fail(lineno, col, f"arc line needs 3 fields, got {len(toks) - 1}", "arc <uid> <vid> <weight>")
            u = vertex(toks[1][1], lineno, toks[1][0])
            v = vertex(toks[2][1], lineno, toks[2][0])
            wcol, wtok = toks[3]
            try:
                w = parse_number(wtok)
            except ValueError as exc:
                fail(lineno, wcol, str(exc), "a number such as 1.5 or 3/2")
            if w <= 0:
                fail(lineno, wcol, f"nonpositive arc weight {wtok}", "a positive weight")
            if (u, v) in arcs:
                fail(lineno, col, f"duplicate arc ({u},{v})")
            if u == v:
                fail(lineno, toks[1][0], f"self-loop at vertex {u}")
            arcs[(u, v)] = w
        else:
            fail(lineno, col, f"unknown directive {kw!r}", "'leaf' or 'arc'")

    if not header_seen:
        fail(1, 1, "empty input", "'anet 1' header")
    in_arcs = {x for a in arcs for x in a}
    for v in labels:
        if v not in in_arcs:
            line, col = first_use[v]
            fail(line, col, f"leaf id {v} is not used by any arc")
    n = ArborealNetwork(arcs, labels, relaxed=mode_relaxed if relaxed is None else relaxed)
    rep = validate(n)
    if not rep.ok:
        line, col = first_use.get(rep.where[0], (1, 1)) if rep.where else (1, 1)
        fail(line, col, f"invalid network: {rep}")
    return n


def write_anet(n: ArborealNetwork) -> str:
    """Serialize with vertices renumbered 1..|V| in id order and arcs sorted."""
    ren = {v: i + 1 for i, v in enumerate(sorted(n.vertices))}
    out = ["anet 1 relaxed" if n.relaxed else "anet 1"]
    for v in sorted(n.labels, key=ren.__getitem__):
        out.append(f"leaf {ren[v]} {n.labels[v]}")
    for (u, v), w in sorted(((ren[u], ren[v]), w) for (u, v), w in n.arcs.items()):
        out.append(f"arc {u} {v} {format_number(w)}")
    return "\n".join(out) + "\n"
