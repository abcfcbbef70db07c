"""Newick reader and writer for weighted unrooted trees.

Every edge needs a branch length, given as a decimal (``1.5``) or a
fraction (``3/2``). A root with two children is suppressed, its two branch
lengths summed, so ``(a:1,b:1);`` is the single edge a-b of weight 2.
"""

from __future__ import annotations

import re

from ..phylo import InvalidTree, WeightedPhyloTree
from ..rational import format_number, parse_number
from .diagnostics import ParseDiagnostic, ParseError, position

_LABEL = re.compile(r"[A-Za-z0-9_]+")
_NUMBER = re.compile(r"[+-]?[0-9][0-9./]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.children: dict = {}  # node -> [(child, length)]
        self.labels: dict = {}
        self.label_at: dict = {}
        self.node_at: dict = {}
        self.next_id = 1

    def fail(self, message, expected="", at=None):
        line, col = position(self.text, self.pos if at is None else at)
        raise ParseError(ParseDiagnostic(line, col, message, expected))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch, expected=None):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.fail(f"unexpected {got!r}", expected or repr(ch))
        self.pos += 1

    def new_node(self) -> int:
        v = self.next_id
        self.next_id += 1
        self.children[v] = []
        return v

    def label(self):
        self.skip_ws()
        m = _LABEL.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(), m.start()

    def length(self):
        self.expect(":", "':' and a branch length")
        self.skip_ws()
        start = self.pos
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.fail("missing branch length", "a number such as 1.5 or 3/2")
        try:
            value = parse_number(m.group())
        except ValueError as exc:
            self.fail(str(exc), "a number such as 1.5 or 3/2", at=start)
        if value <= 0:
            self.fail(f"nonpositive branch length {m.group()}", "a positive length", at=start)
        self.pos = m.end()
        return value

    def subtree(self) -> int:
        if self.peek() == "(":
            at = self.pos
            self.pos += 1
            v = self.new_node()
            while True:
                c = self.subtree()
                self.children[v].append((c, self.length()))
                nxt = self.peek()
                if nxt == ",":
                    self.pos += 1
                    continue
                if nxt == ")":
                    self.pos += 1
                    break
                self.fail(f"unexpected {nxt or 'end of input'!r}", "',' or ')'")
            self.label()  # internal labels carry no meaning here
            self.node_at[v] = at
            return v
        got = self.label()
        if got is None:
            nxt = self.peek()
            self.fail(f"unexpected {nxt or 'end of input'!r}", "'(' or a leaf label")
        name, at = got
        if name in self.label_at:
            self.fail(f"duplicate leaf label {name!r}", at=at)
        v = self.new_node()
        self.labels[v] = name
        self.label_at[name] = at
        return v

    def parse(self) -> WeightedPhyloTree:
        root = self.subtree()
        if self.peek() == ":":
            self.fail("branch length on the root", "';'")
        self.expect(";", "';'")
        if self.peek():
            self.fail("trailing text after ';'", "end of input")
        at = self.node_at
        if root in self.labels:
            self.fail("a tree needs at least two leaves", at=0)
        for v, cs in self.children.items():
            if v != root and len(cs) == 1:
                self.fail("internal node with a single child (degree-2 vertex)", at=at.get(v, 0))
        kids = self.children[root]
        if len(kids) == 1:
            self.fail("root with a single child", at=at.get(root, 0))
        edges = {}
        for v, cs in self.children.items():
            if v == root and len(kids) == 2:
                continue
            for c, w in cs:
                edges[(v, c)] = w
        if len(kids) == 2:
            (a, wa), (b, wb) = kids
            edges[(a, b)] = wa + wb
        try:
            return WeightedPhyloTree(edges, self.labels)
        except InvalidTree as exc:
            self.fail(str(exc), at=0)


def parse_newick(text: str) -> WeightedPhyloTree:
    """Parse one Newick tree; raises ParseError with a position on any problem."""
    return _Parser(text).parse()


def write_newick(t: WeightedPhyloTree) -> str:
    """Newick hung from the internal vertex next to the smallest leaf, children in label order."""
    taxa = t.taxa
    first = t.leaf(taxa[0])
    if len(taxa) == 2:
        w = format_number(t.weight(first, t.leaf(taxa[1])) / 2)
        return f"({taxa[0]}:{w},{taxa[1]}:{w});"
    (root,) = t.neighbors(first)
    parent = {root: None}
    order = [root]
    for u in order:
        for w in t.neighbors(u):
            if w not in parent:
                parent[w] = u
                order.append(w)
    key = {}
    for u in reversed(order):
        key[u] = t.labels[u] if t.is_leaf(u) else min(key[c] for c in t.neighbors(u) if parent.get(c) == u)
    text = {}
    for u in reversed(order):
        if t.is_leaf(u):
            text[u] = t.labels[u]
            continue
        kids = sorted((c for c in t.neighbors(u) if parent.get(c) == u), key=key.__getitem__)
        text[u] = "(" + ",".join(f"{text[c]}:{format_number(t.weight(u, c))}" for c in kids) + ")"
    return text[root] + ";"
