"""Undirected graphs, surgery, and chordal / Ptolemaic recognition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import ClassVar, Hashable, Iterable, Mapping

import numpy as np

from . import kernels

__all__ = [
    "Check",
    "UndirectedGraph",
    "PerfectEliminationOrdering",
    "InducedCycleWitness",
    "is_connected",
    "connected_components",
    "chordality_certificate",
    "is_chordal",
    "find_induced_gem",
    "find_induced_w5",
    "is_ptolemaic",
    "maximal_cliques_chordal",
    "suppress_degree2",
    "subdivide_edge",
    "contract_edge",
]


@dataclass(frozen=True)
class Check:
    """Outcome of a yes/no test that carries a counterexample on failure."""

    ok: bool
    witness: tuple | object | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


class UndirectedGraph:
    """A simple undirected graph over opaque vertex ids.

    Values are immutable: every operation in this module returns a new graph.
    ``labels`` attaches optional names to vertices (leaf names); they are
    metadata and play no part in identity.
    """

    __slots__ = ("_adj", "_labels", "_order")

    def __init__(self, vertices: Iterable = (), edges: Iterable = (), labels: Mapping | None = None):
        adj: dict = {v: set() for v in vertices}
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u!r}")
            if u not in adj or v not in adj:
                missing = u if u not in adj else v
                raise ValueError(f"edge {{{u!r}, {v!r}}} uses unknown vertex {missing!r}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        self._labels = MappingProxyType({v: l for v, l in (labels or {}).items() if v in adj})
        self._order = None

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset:
        return frozenset(frozenset((u, v)) for u, ns in self._adj.items() for v in ns)

    @property
    def labels(self) -> Mapping:
        return self._labels

    def label(self, v):
        return self._labels.get(v, v)

    def label_edges(self) -> frozenset:
        """Edges as unordered pairs of labels (vertex ids where unlabeled)."""
        return frozenset(frozenset((self.label(u), self.label(v))) for u, v in map(tuple, self.edges))

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def has_edge(self, u, v) -> bool:
        return v in self._adj.get(u, ())

    def __contains__(self, v):
        return v in self._adj

    def __len__(self):
        return len(self._adj)

    def __iter__(self):
        return iter(self.sorted_vertices())

    def sorted_vertices(self) -> tuple:
        if self._order is None:
            self._order = tuple(sorted(self._adj, key=_sort_key))
        return self._order

    def number_of_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    def induced(self, keep: Iterable) -> "UndirectedGraph":
        keep = set(keep)
        unknown = keep - self._adj.keys()
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown, key=_sort_key)!r}")
        edges = [(u, v) for u in keep for v in self._adj[u] if v in keep and _sort_key(u) < _sort_key(v)]
        return UndirectedGraph(keep, edges, self._labels)

    def adjacency_matrix(self) -> tuple[np.ndarray, tuple]:
        order = self.sorted_vertices()
        index = {v: i for i, v in enumerate(order)}
        a = np.zeros((len(order), len(order)), dtype=np.uint8)
        for u, ns in self._adj.items():
            for v in ns:
                a[index[u], index[v]] = 1
        return a, order

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(|V|={len(self)}, |E|={self.number_of_edges()})"


def _sort_key(v: Hashable):
    # Mixed id types (ints from surgery, strings from users) still order deterministically.
    return (type(v).__name__, v)


# -- connectivity -----------------------------------------------------------


def connected_components(g: UndirectedGraph) -> list[frozenset]:
    seen = set()
    comps = []
    for s in g.sorted_vertices():
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: UndirectedGraph) -> bool:
    return len(g) <= 1 or len(connected_components(g)) == 1


# -- chordality -------------------------------------------------------------


@dataclass(frozen=True)
class PerfectEliminationOrdering:
    """Vertex order in which every vertex's later neighbours form a clique."""

    order: tuple
    chordal: ClassVar[bool] = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class InducedCycleWitness:
    """An induced (chordless) cycle of length at least 4, listed in cycle order."""

    cycle: tuple
    chordal: ClassVar[bool] = False

    def __bool__(self):
        return False


def _mcs_order(g: UndirectedGraph) -> list:
    """Maximum cardinality search; returns the visit order (ties -> smallest id)."""
    weight = {v: 0 for v in g.sorted_vertices()}
    rank = {v: i for i, v in enumerate(g.sorted_vertices())}
    visited = []
    left = set(weight)
    while left:
        v = max(left, key=lambda u: (weight[u], -rank[u]))
        left.remove(v)
        visited.append(v)
        for w in g.neighbors(v):
            if w in left:
                weight[w] += 1
    return visited


def _peo_failure(g: UndirectedGraph, order) -> tuple | None:
    """Return (v, p, w) with p, w later neighbours of v that are not adjacent, or None."""
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != len(g) or set(pos) != g.vertices:
        raise ValueError("ordering is not a permutation of the vertex set")
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if len(later) < 2:
            continue
        p = min(later, key=pos.__getitem__)
        np_ = g.neighbors(p)
        for w in sorted(later, key=pos.__getitem__):
            if w != p and w not in np_:
                return (v, p, w)
    return None


def _chordless_path(g: UndirectedGraph, a, b, blocked: set) -> list | None:
    """Shortest a-b path avoiding ``blocked``; shortest paths are chordless."""
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            path = []
            while u is not None:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for w in sorted(g.neighbors(u), key=_sort_key):
            if w not in prev and w not in blocked:
                prev[w] = u
                queue.append(w)
    return None


def _cycle_through(g: UndirectedGraph, v, a, b) -> tuple | None:
    blocked = (set(g.neighbors(v)) | {v}) - {a, b}
    path = _chordless_path(g, a, b, blocked)
    if path is None:
        return None
    return (v, *path)


def _rotate(cycle: tuple) -> tuple:
    """Start at the smallest vertex and walk toward its smaller neighbour."""
    i = min(range(len(cycle)), key=lambda k: _sort_key(cycle[k]))
    fwd = cycle[i:] + cycle[:i]
    back = (fwd[0], *fwd[:0:-1])
    return min(fwd, back, key=lambda c: _sort_key(c[1]))


def _induced_cycle(g: UndirectedGraph, hint: tuple | None) -> tuple:
    if hint is not None:
        cyc = _cycle_through(g, *hint)
        if cyc is not None:
            return _rotate(cyc)
    # A graph is chordal iff no vertex has two non-adjacent neighbours joined
    # by a path outside its closed neighbourhood.
    for v in g.sorted_vertices():
        nbrs = sorted(g.neighbors(v), key=_sort_key)
        for a, b in combinations(nbrs, 2):
            if not g.has_edge(a, b):
                cyc = _cycle_through(g, v, a, b)
                if cyc is not None:
                    return _rotate(cyc)
    raise AssertionError("PEO verification failed but no induced cycle exists")


def chordality_certificate(g: UndirectedGraph) -> PerfectEliminationOrdering | InducedCycleWitness:
    """PEO from maximum cardinality search (verified), or an induced cycle of length >= 4."""
    order = _mcs_order(g)[::-1]
    bad = _peo_failure(g, order)
    if bad is None:
        return PerfectEliminationOrdering(tuple(order))
    return InducedCycleWitness(_induced_cycle(g, bad))


def is_chordal(g: UndirectedGraph) -> bool:
    return chordality_certificate(g).chordal


def maximal_cliques_chordal(g: UndirectedGraph, peo: PerfectEliminationOrdering) -> list[frozenset]:
    """Maximal cliques of a chordal graph read off a perfect elimination ordering."""
    order = peo.order if isinstance(peo, PerfectEliminationOrdering) else tuple(peo)
    if _peo_failure(g, order) is not None:
        raise ValueError("ordering is not a perfect elimination ordering of the graph")
    pos = {v: i for i, v in enumerate(order)}
    candidates = {frozenset([v, *(w for w in g.neighbors(v) if pos[w] > pos[v])]) for v in order}
    by_size = sorted(candidates, key=len, reverse=True)
    maximal = []
    for c in by_size:
        if not any(c < m for m in maximal):
            maximal.append(c)
    return sorted(maximal, key=lambda c: sorted(map(_sort_key, c)))


# -- forbidden subgraphs ----------------------------------------------------


def find_induced_gem(g: UndirectedGraph) -> tuple | None:
    """Five vertices (apex, p1, p2, p3, p4) inducing a gem, or None."""
    if len(g) < 5:
        return None
    a, order = g.adjacency_matrix()
    hit = kernels.find_gem(a)
    return None if hit is None else tuple(order[i] for i in hit)


def find_induced_w5(g: UndirectedGraph) -> tuple | None:
    """Five vertices (apex, c1, c2, c3, c4) inducing the wheel W5, or None."""
    if len(g) < 5:
        return None
    a, order = g.adjacency_matrix()
    hit = kernels.find_w5(a)
    return None if hit is None else tuple(order[i] for i in hit)


def is_ptolemaic(g: UndirectedGraph) -> Check:
    cert = chordality_certificate(g)
    if not cert.chordal:
        return Check(False, cert, f"induced cycle {cert.cycle!r}")
    gem = find_induced_gem(g)
    if gem is not None:
        return Check(False, gem, f"induced gem {gem!r}")
    return Check(True)


# -- surgery ----------------------------------------------------------------


def _fresh_vertex(g: UndirectedGraph):
    ints = [v for v in g.vertices if isinstance(v, int)]
    return max(ints, default=-1) + 1


def suppress_degree2(g: UndirectedGraph, v) -> UndirectedGraph:
    """Remove degree-2 vertex ``v`` and join its two neighbours."""
    if v not in g:
        raise ValueError(f"unknown vertex {v!r}")
    if g.degree(v) != 2:
        raise ValueError(f"vertex {v!r} has degree {g.degree(v)}, expected 2")
    u, w = g.neighbors(v)
    if g.has_edge(u, w):
        raise ValueError(f"suppressing {v!r} would duplicate edge {{{u!r}, {w!r}}}")
    edges = [e for e in g.edges if v not in e] + [(u, w)]
    return UndirectedGraph(g.vertices - {v}, edges, g.labels)


def subdivide_edge(g: UndirectedGraph, e) -> UndirectedGraph:
    """Replace edge {u, w} by the path u - v - w through a new vertex v."""
    u, w = tuple(e)
    if not g.has_edge(u, w):
        raise ValueError(f"{{{u!r}, {w!r}}} is not an edge")
    v = _fresh_vertex(g)
    edges = [x for x in g.edges if x != frozenset((u, w))] + [(u, v), (v, w)]
    return UndirectedGraph(g.vertices | {v}, edges, g.labels)


def contract_edge(g: UndirectedGraph, e) -> UndirectedGraph:
    """Contract edge (u, v): v disappears and its other edges move to u."""
    u, v = tuple(e)
    if not g.has_edge(u, v):
        raise ValueError(f"{{{u!r}, {v!r}}} is not an edge")
    edges = set()
    for x in g.edges:
        if v not in x:
            edges.add(x)
    for w in g.neighbors(v):
        if w != u:
            edges.add(frozenset((u, w)))
    labels = {k: l for k, l in g.labels.items() if k != v}
    return UndirectedGraph(g.vertices - {v}, [tuple(x) for x in edges], labels)
