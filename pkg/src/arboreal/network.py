"""Weighted arboreal networks: validation, ancestry, distances and normal forms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .canon import ahu_encode
from .graph import Check, UndirectedGraph
from .matrix import DistanceMatrix, PartialDistance
from .phylo import WeightedPhyloTree, leaf_distance_matrix
from .rational import INF, as_fraction, format_number

__all__ = [
    "ArborealNetwork",
    "InvalidNetwork",
    "ValidationReport",
    "VertexHeights",
    "validate",
    "descendant_leaves",
    "lca",
    "shared_ancestry_graph",
    "underlying_weighted_tree",
    "induced_partial_distance",
    "induced_distance",
    "is_ultrametric_network",
    "heights",
    "canonical_form",
    "is_isomorphic",
    "suppress_outdegree1",
    "normalize_leaves",
    "subdivide_arc",
    "contract_arc",
    "suppress_vertex",
]


class InvalidNetwork(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(str(report))
        self.report = report


class ArborealNetwork:
    """A weighted DAG on integer vertex ids whose outdegree-0 vertices carry labels.

    Construction only records the data; call :func:`validate` (or
    :meth:`require_valid`) to check the network axioms. ``relaxed`` allows
    leaves of indegree above one.
    """

    __slots__ = ("_children", "_parents", "_labels", "_by_label", "relaxed", "_cache")

    def __init__(self, arcs: Mapping, labels: Mapping[int, str], relaxed: bool = False):
        children: dict = {}
        parents: dict = {}
        for (u, v), w in arcs.items():
            w = as_fraction(w)
            children.setdefault(u, {})[v] = w
            parents.setdefault(v, {})[u] = w
            children.setdefault(v, {})
            parents.setdefault(u, {})
        for v in labels:
            children.setdefault(v, {})
            parents.setdefault(v, {})
        self._children = {v: MappingProxyType(c) for v, c in children.items()}
        self._parents = {v: MappingProxyType(p) for v, p in parents.items()}
        self._labels = MappingProxyType(dict(labels))
        self._by_label = MappingProxyType({l: v for v, l in labels.items()})
        self.relaxed = bool(relaxed)
        self._cache: dict = {}

    # -- structure ----------------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._children)

    @property
    def arcs(self) -> dict:
        return {(u, v): w for u, cs in self._children.items() for v, w in cs.items()}

    @property
    def labels(self) -> Mapping[int, str]:
        return self._labels

    @property
    def taxa(self) -> tuple:
        return tuple(sorted(self._by_label))

    def leaf(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"unknown leaf label {label!r}") from None

    def label(self, v):
        return self._labels.get(v)

    def _check(self, v):
        if v not in self._children:
            raise KeyError(f"unknown vertex {v!r}")

    def children(self, v) -> Mapping:
        self._check(v)
        return self._children[v]

    def parents(self, v) -> Mapping:
        self._check(v)
        return self._parents[v]

    def weight(self, u, v) -> Fraction:
        try:
            return self._children[u][v]
        except KeyError:
            raise KeyError(f"({u!r}, {v!r}) is not an arc") from None

    @property
    def roots(self) -> tuple:
        return tuple(sorted(v for v, p in self._parents.items() if not p))

    @property
    def leaves(self) -> tuple:
        return tuple(sorted(v for v, c in self._children.items() if not c))

    @property
    def r2_roots(self) -> tuple:
        return tuple(v for v in self.roots if len(self._children[v]) == 2)

    def fresh_id(self) -> int:
        return max(self._children, default=0) + 1

    def number_of_arcs(self) -> int:
        return sum(len(c) for c in self._children.values())

    def require_valid(self) -> "ArborealNetwork":
        rep = validate(self)
        if not rep.ok:
            raise InvalidNetwork(rep)
        return self

    def topological_order(self) -> list:
        """Parents before children; ties by vertex id. Raises ValueError on a cycle."""
        if "topo" not in self._cache:
            indeg = {v: len(p) for v, p in self._parents.items()}
            ready = sorted(v for v, d in indeg.items() if d == 0)
            queue = deque(ready)
            order = []
            while queue:
                v = queue.popleft()
                order.append(v)
                for c in sorted(self._children[v]):
                    indeg[c] -= 1
                    if indeg[c] == 0:
                        queue.append(c)
            if len(order) != len(indeg):
                raise ValueError("network contains a directed cycle")
            self._cache["topo"] = order
        return self._cache["topo"]

    def clusters(self) -> dict:
        """Vertex -> frozenset of descendant leaf labels."""
        if "clusters" not in self._cache:
            out = {}
            for v in reversed(self.topological_order()):
                if not self._children[v]:
                    out[v] = frozenset([self._labels[v]]) if v in self._labels else frozenset()
                else:
                    acc = set()
                    for c in self._children[v]:
                        acc |= out[c]
                    out[v] = frozenset(acc)
            self._cache["clusters"] = out
        return self._cache["clusters"]

    def __eq__(self, other):
        if not isinstance(other, ArborealNetwork):
            return NotImplemented
        return self.arcs == other.arcs and dict(self._labels) == dict(other._labels)

    def __hash__(self):
        return hash(canonical_form(self))

    def __repr__(self):
        return (f"ArborealNetwork(|V|={len(self._children)}, |A|={self.number_of_arcs()}, "
                f"roots={len(self.roots)}, leaves={list(self.taxa)!r})")


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    clause: str = ""
    detail: str = ""
    where: tuple = ()

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"{self.clause}: {self.detail}"


def _fail(clause, detail, *where):
    return ValidationReport(False, clause, detail, tuple(where))


def validate(n: ArborealNetwork) -> ValidationReport:
    """Check the network axioms in a fixed order and report the first violation."""
    for (u, v), w in sorted(n.arcs.items()):
        if u == v:
            return _fail("acyclic", f"self-loop at vertex {u}", u)
        if w <= 0:
            return _fail("weights", f"arc ({u},{v}) has nonpositive weight {format_number(w)}", u, v)
    sinks = {v for v in n.vertices if not n.children(v)}
    for v in sorted(n.labels):
        if n.children(v):
            return _fail("labels", f"labelled vertex {v} ({n.labels[v]}) has outdegree {len(n.children(v))}", v)
    for v in sorted(sinks):
        if v not in n.labels:
            return _fail("labels", f"outdegree-0 vertex {v} has no label", v)
    if len(set(n.labels.values())) != len(n.labels):
        return _fail("labels", "leaf labels are not distinct")
    if len(n.labels) < 2:
        return _fail("labels", "a network needs at least two leaves")
    try:
        n.topological_order()
    except ValueError:
        on_cycle = _cycle_vertex(n)
        return _fail("acyclic", f"directed cycle through vertex {on_cycle}", on_cycle)
    if not _weakly_connected(n):
        return _fail("connected", "underlying graph is disconnected")
    for r in n.roots:
        if len(n.children(r)) < 2:
            return _fail("root-outdegree", f"root {r} has outdegree {len(n.children(r))}", r)
    if not n.relaxed:
        for v in sorted(sinks):
            if len(n.parents(v)) != 1:
                return _fail("leaf-indegree", f"leaf {v} ({n.labels[v]}) has indegree {len(n.parents(v))}", v)
    for v in sorted(n.vertices):
        if len(n.parents(v)) == 1 and len(n.children(v)) == 1:
            return _fail("degree", f"vertex {v} has indegree 1 and outdegree 1", v)
    # Connected with |A| = |V| - 1 iff every arc is a bridge.
    parent = {v: v for v in n.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in sorted(n.arcs):
        ru, rv = find(u), find(v)
        if ru == rv:
            return _fail("arboreal", f"arc ({u},{v}) lies on an undirected cycle", u, v)
        parent[ru] = rv
    return ValidationReport(True)


def _cycle_vertex(n: ArborealNetwork):
    color = {}
    for s in sorted(n.vertices):
        if s in color:
            continue
        stack = [(s, iter(sorted(n.children(s))))]
        color[s] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
            elif color.get(nxt) == 1:
                return nxt
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(sorted(n.children(nxt)))))
    return None


def _weakly_connected(n: ArborealNetwork) -> bool:
    verts = n.vertices
    if not verts:
        return True
    start = min(verts)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in (*n.children(v), *n.parents(v)):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(verts)


# -- ancestry ---------------------------------------------------------------


def descendant_leaves(n: ArborealNetwork, v) -> frozenset:
    n._check(v)
    return n.clusters()[v]


def _ancestors(n: ArborealNetwork, v) -> set:
    out = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for p in n.parents(u):
            if p not in out:
                out.add(p)
                stack.append(p)
    return out


def lca(n: ArborealNetwork, x: str, y: str):
    """The unique lowest common ancestor of leaves x and y, or None."""
    vx, vy = n.leaf(x), n.leaf(y)
    if x == y:
        raise ValueError("lca needs two distinct leaves")
    common = _ancestors(n, vx) & _ancestors(n, vy)
    if not common:
        return None
    lowest = [v for v in common if not any(c in common for c in n.children(v))]
    assert len(lowest) == 1, f"leaves {x},{y} have {len(lowest)} lowest common ancestors"
    return lowest[0]


def _root_clusters(n: ArborealNetwork) -> list:
    cl = n.clusters()
    return [cl[r] for r in n.roots]


def shared_ancestry_graph(n: ArborealNetwork) -> UndirectedGraph:
    """Graph on the leaves (ids 0..|X|-1 in label order) joining pairs with a common ancestor."""
    taxa = n.taxa
    idx = {l: i for i, l in enumerate(taxa)}
    edges = set()
    for c in _root_clusters(n):
        ids = sorted(idx[l] for l in c)
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                edges.add((a, b))
    return UndirectedGraph(range(len(taxa)), edges, dict(enumerate(taxa)))


# -- underlying tree and distances ------------------------------------------


def underlying_weighted_tree(n: ArborealNetwork) -> WeightedPhyloTree:
    """Forget directions, merging the two arcs of each outdegree-2 root into one edge."""
    rep = validate(n)
    if not rep.ok:
        raise InvalidNetwork(rep)
    r2 = set(n.r2_roots)
    edges = {}
    for (u, v), w in n.arcs.items():
        if u not in r2:
            edges[(u, v)] = w
    for r in r2:
        (a, wa), (b, wb) = n.children(r).items()
        edges[(a, b)] = wa + wb
    return WeightedPhyloTree(edges, n.labels)


def _down_distances(n: ArborealNetwork) -> dict:
    """Vertex -> {leaf label: path length}; below any vertex the network is a tree."""
    out = {}
    for v in reversed(n.topological_order()):
        cs = n.children(v)
        if not cs:
            out[v] = {n.labels[v]: Fraction(0)}
            continue
        acc = {}
        for c, w in cs.items():
            for x, l in out[c].items():
                if x in acc:
                    raise InvalidNetwork(ValidationReport(False, "arboreal", f"two paths from {v} to leaf {x}", v))
                acc[x] = w + l
        out[v] = acc
    return out


def induced_partial_distance(n: ArborealNetwork) -> PartialDistance:
    """D~: lca-path length where a common ancestor exists, INF elsewhere."""
    down = _down_distances(n)
    taxa = n.taxa
    idx = {l: i for i, l in enumerate(taxa)}
    k = len(taxa)
    rows = [[Fraction(0) if i == j else INF for j in range(k)] for i in range(k)]
    done = [[i == j for j in range(k)] for i in range(k)]
    for v in n.vertices:
        parts = [(w, down[c]) for c, w in n.children(v).items()]
        for a in range(len(parts)):
            wa, da = parts[a]
            for b in range(a + 1, len(parts)):
                wb, db = parts[b]
                for x, lx in da.items():
                    i = idx[x]
                    for y, ly in db.items():
                        j = idx[y]
                        if done[i][j]:
                            raise AssertionError(f"pair ({x},{y}) has two lowest common ancestors")
                        done[i][j] = done[j][i] = True
                        rows[i][j] = rows[j][i] = wa + lx + wb + ly
    return PartialDistance(taxa, rows)


def induced_distance(n: ArborealNetwork) -> DistanceMatrix:
    """D: leaf distances in the weighted underlying tree."""
    if n.relaxed and any(len(n.parents(v)) > 1 for v in n.leaves):
        n = normalize_leaves(n)
    return leaf_distance_matrix(underlying_weighted_tree(n))


# -- ultrametricity ---------------------------------------------------------


@dataclass(frozen=True)
class VertexHeights:
    """delta: vertex -> height above the leaves; t: non-leaf vertex -> 2 * height."""

    delta: Mapping
    t: Mapping = field(default_factory=dict)


def _height_scan(n: ArborealNetwork):
    delta = {}
    rep = {}  # vertex -> smallest descendant leaf label
    for v in reversed(n.topological_order()):
        cs = n.children(v)
        if not cs:
            delta[v] = Fraction(0)
            rep[v] = n.labels[v]
            continue
        vals = sorted(((rep[c], w + delta[c]) for c, w in cs.items()))
        x, hx = vals[0]
        for y, hy in vals[1:]:
            if hy != hx:
                return None, (v, x, y)
        delta[v] = hx
        rep[v] = x
    return delta, None


def is_ultrametric_network(n: ArborealNetwork) -> Check:
    """All paths from a vertex to its descendant leaves have equal length; witness (v, x, y)."""
    _, bad = _height_scan(n)
    if bad is None:
        return Check(True)
    v, x, y = bad
    return Check(False, bad, f"vertex {v}: leaves {x} and {y} lie at different path lengths")


def heights(n: ArborealNetwork) -> VertexHeights:
    delta, bad = _height_scan(n)
    if bad is not None:
        raise ValueError(f"network is not ultrametric (witness {bad})")
    t = {v: 2 * h for v, h in delta.items() if n.children(v)}
    return VertexHeights(MappingProxyType(delta), MappingProxyType(t))


# -- canonical form ---------------------------------------------------------


def canonical_form(n: ArborealNetwork) -> bytes:
    """Canonical bytes; equal iff the networks are isomorphic by a label-preserving map.

    The underlying undirected graph of an arboreal network is a tree, so the
    form is an AHU encoding hung from the smallest-labelled leaf, with every
    edge tagged by its direction and reduced weight.
    """
    adj = {v: [] for v in n.vertices}
    for (u, v), w in n.arcs.items():
        ws = format_number(w)
        adj[u].append((v, ">" + ws))
        adj[v].append((u, "<" + ws))
    if len(n.arcs) != len(adj) - 1:
        raise ValueError("canonical form needs an arboreal (tree-shaped) network")
    root = n.leaf(n.taxa[0])
    return ahu_encode(adj, root, lambda v: n.labels.get(v, ""))


def is_isomorphic(a: ArborealNetwork, b: ArborealNetwork) -> bool:
    return canonical_form(a) == canonical_form(b)


# -- normal forms -----------------------------------------------------------


def suppress_outdegree1(n: ArborealNetwork) -> ArborealNetwork:
    """Contract every arc leaving an outdegree-1 vertex, adding its weight to the parent arcs."""
    children = {v: dict(n.children(v)) for v in n.vertices}
    parents = {v: dict(n.parents(v)) for v in n.vertices}
    for u in sorted(n.vertices):
        if len(children[u]) != 1 or not parents[u]:
            continue
        ((v, w),) = children[u].items()
        del parents[v][u]
        for p, wp in parents[u].items():
            del children[p][u]
            assert v not in children[p], "contraction would create a parallel arc"
            children[p][v] = wp + w
            parents[v][p] = wp + w
        del children[u], parents[u]
    arcs = {(u, v): w for u, cs in children.items() for v, w in cs.items()}
    return ArborealNetwork(arcs, n.labels, relaxed=True)


def normalize_leaves(n: ArborealNetwork) -> ArborealNetwork:
    """Insert one vertex above each leaf of indegree > 1.

    The new vertex takes half the smallest incoming arc weight on its arc to
    the leaf; every parent arc keeps the remainder.
    """
    arcs = n.arcs
    nxt = n.fresh_id()
    for x in n.leaves:
        ps = n.parents(x)
        if len(ps) <= 1:
            continue
        s = min(ps.values()) / 2
        v = nxt
        nxt += 1
        for p, w in ps.items():
            del arcs[(p, x)]
            arcs[(p, v)] = w - s
        arcs[(v, x)] = s
    return ArborealNetwork(arcs, n.labels, relaxed=False)


# -- directed surgery -------------------------------------------------------


def subdivide_arc(n: ArborealNetwork, arc, upper) -> tuple[ArborealNetwork, int]:
    """Split (u, v) through a new vertex; ``upper`` is the weight of the new (u, new) arc."""
    u, v = arc
    w = n.weight(u, v)
    upper = as_fraction(upper)
    if not 0 < upper < w:
        raise ValueError(f"split weight {format_number(upper)} must lie strictly inside (0, {format_number(w)})")
    arcs = n.arcs
    new = n.fresh_id()
    del arcs[(u, v)]
    arcs[(u, new)] = upper
    arcs[(new, v)] = w - upper
    return ArborealNetwork(arcs, n.labels, n.relaxed), new


def suppress_vertex(n: ArborealNetwork, v) -> ArborealNetwork:
    """Remove a vertex of indegree 1 and outdegree 1, joining its arcs with summed weight."""
    ps, cs = n.parents(v), n.children(v)
    if len(ps) != 1 or len(cs) != 1:
        raise ValueError(f"vertex {v} has indegree {len(ps)} and outdegree {len(cs)}, expected 1 and 1")
    ((p, wp),), ((c, wc),) = ps.items(), cs.items()
    arcs = n.arcs
    del arcs[(p, v)], arcs[(v, c)]
    arcs[(p, c)] = wp + wc
    return ArborealNetwork(arcs, n.labels, n.relaxed)


def contract_arc(n: ArborealNetwork, arc) -> ArborealNetwork:
    """Contract (u, v) into u; v's out-arcs move to u with ω(u, v) added, keeping path lengths."""
    u, v = arc
    w = n.weight(u, v)
    if len(n.parents(v)) != 1:
        raise ValueError(f"vertex {v} has indegree {len(n.parents(v))}; only indegree-1 heads can be contracted")
    if v in n.labels:
        raise ValueError("cannot contract an arc into a leaf")
    arcs = n.arcs
    del arcs[(u, v)]
    for c, wc in n.children(v).items():
        del arcs[(v, c)]
        if (u, c) in arcs:
            raise ValueError(f"contraction would duplicate arc ({u},{c})")
        arcs[(u, c)] = w + wc
    return ArborealNetwork(arcs, n.labels, n.relaxed)
