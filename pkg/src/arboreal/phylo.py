"""Weighted unrooted phylogenetic trees and the classical tree/ultrametric constructions."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import kernels
from .canon import ahu_encode
from .graph import Check, UndirectedGraph
from .matrix import DistanceMatrix, PartialDistance
from .rational import INF, as_fraction, format_number

__all__ = [
    "InvalidTree",
    "NotTreeLike",
    "NotUltrametric",
    "WeightedPhyloTree",
    "build_named_tree",
    "path_length",
    "leaf_distance_matrix",
    "restrict",
    "check_four_point",
    "check_three_point_ultrametric",
    "tree_from_distance",
    "equidistant_tree_from_ultrametric",
    "ultrametric_hierarchy",
    "compute_wcps",
    "is_wcps",
    "tree_canonical_form",
    "trees_isomorphic",
]


class InvalidTree(ValueError):
    pass


class NotTreeLike(ValueError):
    """Raised by tree_from_distance; ``witness`` is a violating quadruple when there is one."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotUltrametric(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WeightedPhyloTree:
    """An unrooted tree with labelled leaves and positive rational edge weights.

    Vertex ids are integers. ``edges`` maps ``(u, v)`` pairs to weights;
    ``labels`` maps each leaf id to its label.
    """

    __slots__ = ("_adj", "_labels", "_by_label")

    def __init__(self, edges: Mapping, labels: Mapping[int, str]):
        adj: dict = {}
        for (u, v), w in edges.items():
            w = as_fraction(w)
            if u == v:
                raise InvalidTree(f"self-loop at vertex {u}")
            if w <= 0:
                raise InvalidTree(f"edge {{{u},{v}}} has nonpositive weight {format_number(w)}")
            if v in adj.get(u, {}):
                raise InvalidTree(f"duplicate edge {{{u},{v}}}")
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        for v in labels:
            adj.setdefault(v, {})
        self._adj = {v: MappingProxyType(n) for v, n in adj.items()}
        self._labels = MappingProxyType(dict(labels))
        self._by_label = MappingProxyType({l: v for v, l in labels.items()})
        self._validate()

    def _validate(self):
        n = len(self._adj)
        if len(self._labels) < 2:
            raise InvalidTree("a phylogenetic tree needs at least two leaves")
        if len(self._by_label) != len(self._labels):
            raise InvalidTree("leaf labels are not distinct")
        for v, l in self._labels.items():
            if not isinstance(l, str) or not l:
                raise InvalidTree(f"leaf {v} has an empty or non-string label")
        m = sum(len(x) for x in self._adj.values()) // 2
        if m != n - 1:
            raise InvalidTree(f"{n} vertices and {m} edges: not a tree")
        seen = {next(iter(self._adj))}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != n:
            raise InvalidTree("graph is not connected")
        for v, nbrs in self._adj.items():
            d = len(nbrs)
            if d == 1 and v not in self._labels:
                raise InvalidTree(f"leaf vertex {v} has no label")
            if d != 1 and v in self._labels:
                raise InvalidTree(f"labelled vertex {v} ({self._labels[v]}) has degree {d}")
            if d == 2:
                raise InvalidTree(f"vertex {v} has degree 2")

    # -- accessors ----------------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._adj)

    @property
    def leaves(self) -> frozenset:
        return frozenset(self._labels)

    @property
    def labels(self) -> Mapping[int, str]:
        return self._labels

    @property
    def taxa(self) -> tuple:
        """Leaf labels in sorted order."""
        return tuple(sorted(self._by_label))

    def leaf(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"unknown leaf label {label!r}") from None

    def label(self, v) -> str | None:
        return self._labels.get(v)

    def is_leaf(self, v) -> bool:
        return v in self._labels

    def neighbors(self, v) -> Mapping:
        """Neighbour -> edge weight."""
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def weight(self, u, v) -> Fraction:
        try:
            return self._adj[u][v]
        except KeyError:
            raise KeyError(f"{{{u!r}, {v!r}}} is not an edge") from None

    def edge_weights(self) -> dict:
        return {frozenset((u, v)): w for u, ns in self._adj.items() for v, w in ns.items() if u < v}

    @property
    def graph(self) -> UndirectedGraph:
        return UndirectedGraph(self._adj, [(u, v) for u, ns in self._adj.items() for v in ns if u < v], self._labels)

    def __len__(self):
        return len(self._adj)

    def __repr__(self):
        return f"WeightedPhyloTree(leaves={list(self.taxa)!r}, |V|={len(self)})"

    def __eq__(self, other):
        if not isinstance(other, WeightedPhyloTree):
            return NotImplemented
        return self.edge_weights() == other.edge_weights() and dict(self._labels) == dict(other._labels)

    def __hash__(self):
        return hash(tree_canonical_form(self))


def build_named_tree(triples: Iterable[tuple]) -> tuple[WeightedPhyloTree, dict]:
    """Tree from ``(name, name, weight)`` triples; degree-1 names become leaf labels.

    Returns the tree and the name -> vertex id map.
    """
    triples = list(triples)
    ids: dict = {}
    for u, v, _ in triples:
        for x in (u, v):
            ids.setdefault(x, len(ids) + 1)
    degree: dict = {}
    for u, v, _ in triples:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    edges = {(ids[u], ids[v]): w for u, v, w in triples}
    labels = {ids[x]: x for x, d in degree.items() if d == 1}
    return WeightedPhyloTree(edges, labels), ids


# -- distances --------------------------------------------------------------


def _distances_from(t: WeightedPhyloTree, source) -> dict:
    dist = {source: Fraction(0)}
    stack = [source]
    while stack:
        u = stack.pop()
        for w, lam in t.neighbors(u).items():
            if w not in dist:
                dist[w] = dist[u] + lam
                stack.append(w)
    return dist


def _path(t: WeightedPhyloTree, u, v) -> list:
    prev = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for w in t.neighbors(x):
            if w not in prev:
                prev[w] = x
                stack.append(w)
    out = []
    x = v
    while x is not None:
        out.append(x)
        x = prev[x]
    return out[::-1]


def path_length(t: WeightedPhyloTree, u, v) -> Fraction:
    t.neighbors(u), t.neighbors(v)
    if u == v:
        return Fraction(0)
    p = _path(t, u, v)
    return sum((t.weight(a, b) for a, b in zip(p, p[1:])), Fraction(0))


def leaf_distance_matrix(t: WeightedPhyloTree) -> DistanceMatrix:
    taxa = t.taxa
    rows = []
    for x in taxa:
        dist = _distances_from(t, t.leaf(x))
        rows.append([dist[t.leaf(y)] for y in taxa])
    return DistanceMatrix(taxa, rows)


# -- restriction ------------------------------------------------------------


def restrict(t: WeightedPhyloTree, keep: Iterable[str]) -> WeightedPhyloTree:
    """T|_Y with summed weights; surviving vertices keep their ids."""
    keep = set(keep)
    if len(keep) < 2:
        raise ValueError("restriction needs at least two leaves")
    unknown = keep - set(t.taxa)
    if unknown:
        raise ValueError(f"unknown leaf labels {sorted(unknown)}")
    adj = {v: dict(ns) for v, ns in ((v, t.neighbors(v)) for v in t.vertices)}
    keep_ids = {t.leaf(x) for x in keep}
    # Prune dangling vertices down to the spanning subtree of Y.
    queue = deque(v for v in adj if len(adj[v]) == 1 and v not in keep_ids)
    while queue:
        v = queue.popleft()
        if v not in adj or len(adj[v]) != 1:
            continue
        (w,) = adj.pop(v)
        del adj[w][v]
        if len(adj[w]) == 1 and w not in keep_ids:
            queue.append(w)
    for v in sorted(v for v in adj if len(adj[v]) == 2):
        (a, wa), (b, wb) = adj[v].items()
        del adj[a][v], adj[b][v]
        adj[a][b] = adj[b][a] = wa + wb
        del adj[v]
    edges = {(u, v): w for u, ns in adj.items() for v, w in ns.items() if u < v}
    labels = {v: t.labels[v] for v in keep_ids}
    return WeightedPhyloTree(edges, labels)


# -- classical conditions ---------------------------------------------------


def check_four_point(d: DistanceMatrix) -> Check:
    """Four-point condition over all quadruples; witness (x, y, z, u) has D(x,y)+D(z,u) too large."""
    n = len(d)
    lab = d.labels
    v = d.value
    # Quadruples with a repeated point reduce to the triangle inequality.
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k in (i, j):
                    continue
                if v(i, j) > v(i, k) + v(k, j):
                    return Check(False, (lab[i], lab[j], lab[k], lab[k]),
                                 f"triangle inequality fails on ({lab[i]},{lab[j]},{lab[k]})")
    for i, j, k, l in combinations(range(n), 4):
        s = sorted(
            [
                (v(i, j) + v(k, l), (i, j, k, l)),
                (v(i, k) + v(j, l), (i, k, j, l)),
                (v(i, l) + v(j, k), (i, l, j, k)),
            ],
            key=lambda p: p[0],
        )
        if s[2][0] > s[1][0]:
            quad = tuple(lab[q] for q in s[2][1])
            return Check(False, quad, f"four-point condition fails on {quad}")
    return Check(True)


def check_three_point_ultrametric(d: DistanceMatrix) -> Check:
    """Three-point condition; witness (x, y, z) with D(x,y) > max(D(x,z), D(y,z))."""
    if len(d) <= 2:
        return Check(True)
    hit = kernels.u2_violation(d.rank_matrix())
    if hit is None:
        return Check(True)
    x, y, z = (d.labels[i] for i in hit)
    msg = (f"({x},{y},{z}): {format_number(d[x, y])} > "
           f"max({format_number(d[x, z])},{format_number(d[y, z])})")
    return Check(False, (x, y, z), msg)


# -- tree from a tree-like distance -----------------------------------------


def _insertion_tree(d: DistanceMatrix):
    """Sequential insertion; returns (edges, labels) or None when a step is impossible."""
    taxa = d.labels
    n = len(taxa)
    adj: dict = {1: {}, 2: {}}
    w0 = d.value(0, 1)
    adj[1][2] = adj[2][1] = w0
    labels = {1: taxa[0], 2: taxa[1]}
    leaf_id = [1, 2]
    next_id = 3
    a = 0
    for c in range(2, n):
        dac = d.value(a, c)
        best, bstar = None, None
        for b in range(1, c):
            g = (dac + d.value(a, b) - d.value(b, c)) / 2
            if best is None or g > best:
                best, bstar = g, b
        g = best
        pendant = dac - g
        if g <= 0 or pendant <= 0 or g >= d.value(a, bstar):
            return None
        # Walk the path a -> b* to the point at distance g from a.
        prev = {leaf_id[a]: None}
        stack = [leaf_id[a]]
        target = leaf_id[bstar]
        while stack:
            x = stack.pop()
            if x == target:
                break
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        path = []
        x = target
        while x is not None:
            path.append(x)
            x = prev[x]
        path.reverse()
        acc = Fraction(0)
        attach = None
        for u, w in zip(path, path[1:]):
            lam = adj[u][w]
            if acc + lam == g:
                attach = w
                break
            if acc + lam > g:
                mid = next_id
                next_id += 1
                off = g - acc
                del adj[u][w], adj[w][u]
                adj[mid] = {u: off, w: lam - off}
                adj[u][mid] = off
                adj[w][mid] = lam - off
                attach = mid
                break
            acc += lam
        if attach is None or attach in labels:
            return None
        leaf = next_id
        next_id += 1
        adj[leaf] = {attach: pendant}
        adj[attach][leaf] = pendant
        labels[leaf] = taxa[c]
        leaf_id.append(leaf)
    edges = {(u, v): w for u, ns in adj.items() for v, w in ns.items() if u < v}
    return edges, labels


def tree_from_distance(d: DistanceMatrix) -> WeightedPhyloTree:
    """The unique weighted phylogenetic tree whose leaf distances are exactly ``d``."""
    if not isinstance(d, DistanceMatrix):
        d = DistanceMatrix(d.labels, d.rows())
    if len(d) < 2:
        raise ValueError("need at least two labels")
    built = _insertion_tree(d)
    if built is not None:
        t = WeightedPhyloTree(*built)
        if leaf_distance_matrix(t) == d:
            return t
    fp = check_four_point(d)
    if not fp:
        raise NotTreeLike(f"not tree-like: {fp.message}", fp.witness)
    if built is None:
        raise NotTreeLike("distance satisfies the four-point condition but some label "
                          "sits on an internal point of the tree (zero-length pendant edge)")
    raise AssertionError("insertion produced a tree with the wrong distances")


# -- ultrametrics -----------------------------------------------------------


def ultrametric_hierarchy(d: PartialDistance, subset: Iterable[str] | None = None) -> dict:
    """Cluster -> (height, child clusters) for an ultrametric on ``subset``.

    Heights are half the largest distance inside each cluster; children are
    the components of the graph joining pairs strictly below that maximum.
    """
    members = tuple(d.labels if subset is None else sorted(subset, key=d.index))
    out: dict = {}
    stack = [frozenset(members)]
    while stack:
        cluster = stack.pop()
        if len(cluster) == 1:
            out[cluster] = (Fraction(0), ())
            continue
        items = sorted(cluster, key=d.index)
        top = max(d[x, y] for x, y in combinations(items, 2))
        if top is INF:
            raise NotUltrametric("infinite entry inside a cluster")
        parent = {x: x for x in items}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in combinations(items, 2):
            if d[x, y] < top:
                parent[find(x)] = find(y)
        groups: dict = {}
        for x in items:
            groups.setdefault(find(x), set()).add(x)
        kids = tuple(sorted((frozenset(g) for g in groups.values()), key=lambda g: min(map(d.index, g))))
        out[cluster] = (top / 2, kids)
        stack.extend(kids)
    return out


def equidistant_tree_from_ultrametric(d: DistanceMatrix):
    """The unique rooted equidistant tree (as a single-root network) realizing ``d``."""
    from .network import ArborealNetwork

    if len(d) < 2:
        raise ValueError("need at least two labels")
    tp = check_three_point_ultrametric(d)
    if not tp:
        raise NotUltrametric(f"not an ultrametric: {tp.message}", tp.witness)
    hier = ultrametric_hierarchy(d)
    root = frozenset(d.labels)
    ids = {root: 1}
    arcs = {}
    labels = {}
    queue = deque([root])
    while queue:
        c = queue.popleft()
        h, kids = hier[c]
        if not kids:
            labels[ids[c]] = next(iter(c))
        for k in kids:
            ids[k] = len(ids) + 1
            arcs[(ids[c], ids[k])] = h - hier[k][0]
            queue.append(k)
    return ArborealNetwork(arcs, labels)


# -- cherry-picking ---------------------------------------------------------


def _long_ends(t: WeightedPhyloTree) -> list[tuple[str, int]]:
    """(label, cherry vertex) for every long end of a cherry in ``t``."""
    out = []
    seen = set()
    for x in t.leaves:
        (v,) = t.neighbors(x)
        if v in seen:
            continue
        seen.add(v)
        leafy = [(w, lam) for w, lam in t.neighbors(v).items() if t.is_leaf(w)]
        if len(leafy) < 2:
            continue
        top = max(lam for _, lam in leafy)
        out.extend((t.labels[w], v) for w, lam in leafy if lam == top)
    return sorted(out)


def compute_wcps(t: WeightedPhyloTree, rng=None) -> tuple[str, ...]:
    """A weighted cherry-picking sequence, built from the end by removing long ends.

    Ties go to the smallest label; pass a ``random.Random`` to pick at random.
    """
    remaining = set(t.taxa)
    cur = t
    tail = []
    while len(remaining) > 2:
        ends = sorted({l for l, _ in _long_ends(cur)})
        x = ends[0] if rng is None else rng.choice(ends)
        tail.append(x)
        remaining.discard(x)
        cur = restrict(cur, remaining)
    return tuple(sorted(remaining)) + tuple(reversed(tail))


def _check_permutation(t: WeightedPhyloTree, seq: Sequence[str]):
    if len(seq) != len(t.taxa) or set(seq) != set(t.taxa):
        raise ValueError(f"sequence {list(seq)!r} is not a permutation of the leaf labels {list(t.taxa)!r}")


def is_wcps(t: WeightedPhyloTree, seq: Sequence[str]) -> Check:
    """Whether every x_i (i >= 3) is a long end of a cherry in T restricted to x_1..x_i."""
    seq = tuple(seq)
    _check_permutation(t, seq)
    for i in range(3, len(seq) + 1):
        ti = restrict(t, seq[:i])
        if seq[i - 1] not in {l for l, _ in _long_ends(ti)}:
            return Check(False, seq[i - 1], f"{seq[i - 1]} is not a long end of a cherry at step {i}")
    return Check(True)


# -- isomorphism ------------------------------------------------------------


def tree_canonical_form(t: WeightedPhyloTree) -> bytes:
    """Canonical string; equal iff the trees are isomorphic as weighted leaf-labelled trees."""
    root = t.leaf(t.taxa[0])
    adj = {v: [(w, format_number(lam)) for w, lam in t.neighbors(v).items()] for v in t.vertices}
    return ahu_encode(adj, root, lambda v: t.labels.get(v, ""))


def trees_isomorphic(a: WeightedPhyloTree, b: WeightedPhyloTree) -> bool:
    return tree_canonical_form(a) == tree_canonical_form(b)
