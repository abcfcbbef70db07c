"""Brute-force reference implementations used to check the library.

Nothing here calls the code under test except for plain data access
(vertex sets, arcs, matrix entries), so agreement is meaningful.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction
from functools import lru_cache

from arboreal import INF, ArborealNetwork

# -- undirected graphs --------------------------------------------------------


def induced_edges(g, subset):
    return [(u, v) for u, v in itertools.combinations(subset, 2) if g.has_edge(u, v)]


def _degrees(g, subset):
    return sorted(sum(1 for w in subset if w != v and g.has_edge(v, w)) for v in subset)


def _connected(g, subset):
    subset = set(subset)
    if not subset:
        return True
    start = next(iter(subset))
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in subset:
            if w not in seen and g.has_edge(u, w):
                seen.add(w)
                stack.append(w)
    return seen == subset


def is_induced_cycle(g, cycle):
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i, j in itertools.combinations(range(k), 2):
        adjacent = (j - i) in (1, k - 1)
        if g.has_edge(cycle[i], cycle[j]) != adjacent:
            return False
    return True


def brute_chordal(g) -> bool:
    """No vertex subset of size >= 4 induces a cycle."""
    vs = list(g.vertices)
    for k in range(4, len(vs) + 1):
        for sub in itertools.combinations(vs, k):
            if _degrees(g, sub) == [2] * k and _connected(g, sub):
                return False
    return True


def is_gem(g, five) -> bool:
    # apex of degree 4 over a P4: degree sequence 2,2,3,3,4 forces exactly this shape
    return _degrees(g, five) == [2, 2, 3, 3, 4]


def is_w5(g, five) -> bool:
    return _degrees(g, five) == [3, 3, 3, 3, 4]


def brute_gem_free(g) -> bool:
    return not any(is_gem(g, s) for s in itertools.combinations(list(g.vertices), 5))


def brute_w5_free(g) -> bool:
    return not any(is_w5(g, s) for s in itertools.combinations(list(g.vertices), 5))


def brute_maximal_cliques(g) -> set:
    vs = list(g.vertices)
    cliques = [frozenset(s) for k in range(1, len(vs) + 1) for s in itertools.combinations(vs, k)
               if all(g.has_edge(u, v) for u, v in itertools.combinations(s, 2))]
    return {c for c in cliques if not any(c < o for o in cliques)}


def brute_connected(g) -> bool:
    return _connected(g, g.vertices)


# -- networks -----------------------------------------------------------------


def ancestors(n: ArborealNetwork) -> dict:
    """vertex -> set of ancestors (reflexive), by repeated closure."""
    par = {v: set() for v in n.vertices}
    for u, v in n.arcs:
        par[v].add(u)
    anc = {v: {v} for v in n.vertices}
    changed = True
    while changed:
        changed = False
        for v in n.vertices:
            new = set().union(*(anc[p] for p in par[v])) | {v}
            if new != anc[v]:
                anc[v] = new
                changed = True
    return anc


def brute_descendant_leaves(n: ArborealNetwork, v) -> frozenset:
    anc = ancestors(n)
    return frozenset(lab for leaf, lab in n.labels.items() if v in anc[leaf])


def brute_lcas(n: ArborealNetwork, x: str, y: str) -> set:
    """All minimal common ancestors of two leaves."""
    anc = ancestors(n)
    common = anc[n.leaf(x)] & anc[n.leaf(y)]
    return {v for v in common if not any(w != v and w in common and v in anc[w] for w in common)}


def path_lengths_down(n: ArborealNetwork, v) -> dict:
    """leaf label -> set of lengths of directed paths from v."""
    out = {}
    stack = [(v, Fraction(0))]
    kids = {}
    for (a, b), w in n.arcs.items():
        kids.setdefault(a, []).append((b, w))
    while stack:
        u, acc = stack.pop()
        if u in n.labels:
            out.setdefault(n.labels[u], set()).add(acc)
        for c, w in kids.get(u, ()):
            stack.append((c, acc + w))
    return out


def brute_partial_distance(n: ArborealNetwork) -> dict:
    """{(x, y): value} from path sums below the unique lca, INF without a common ancestor."""
    out = {}
    for x, y in itertools.combinations(sorted(n.taxa), 2):
        lcas = brute_lcas(n, x, y)
        assert len(lcas) <= 1
        if not lcas:
            out[(x, y)] = INF
            continue
        (v,) = lcas
        down = path_lengths_down(n, v)
        (dx,), (dy,) = down[x], down[y]
        out[(x, y)] = dx + dy
    return out


def brute_ultrametric(n: ArborealNetwork) -> bool:
    for v in n.vertices:
        lengths = set().union(*path_lengths_down(n, v).values())
        if len(lengths) > 1:
            return False
    return True


def brute_isomorphic(a: ArborealNetwork, b: ArborealNetwork) -> bool:
    """Try every bijection of unlabelled vertices that fixes the leaves."""
    if set(a.taxa) != set(b.taxa) or len(a.vertices) != len(b.vertices):
        return False
    ia = sorted(v for v in a.vertices if v not in a.labels)
    ib = sorted(v for v in b.vertices if v not in b.labels)
    base = {a.leaf(x): b.leaf(x) for x in a.taxa}
    target = {(u, v): w for (u, v), w in b.arcs.items()}
    for perm in itertools.permutations(ib):
        phi = dict(base)
        phi.update(zip(ia, perm))
        if all(target.get((phi[u], phi[v])) == w for (u, v), w in a.arcs.items()) \
                and len(a.arcs) == len(b.arcs):
            return True
    return False


# -- trees --------------------------------------------------------------------


def tree_distances(t) -> dict:
    """{(x, y): length} for leaf labels, by DFS from every leaf."""
    out = {}
    for x in t.leaves:
        dist = {x: Fraction(0)}
        stack = [x]
        while stack:
            u = stack.pop()
            for w, lam in t.neighbors(u).items():
                if w not in dist:
                    dist[w] = dist[u] + lam
                    stack.append(w)
        for y in t.leaves:
            out[(t.labels[x], t.labels[y])] = dist[y]
    return out


def brute_four_point(d) -> bool:
    labels = d.labels
    for x, y, z, u in itertools.product(labels, repeat=4):
        lhs = d[x, y] + d[z, u]
        if lhs > max(d[x, z] + d[y, u], d[x, u] + d[y, z]):
            return False
    return True


def brute_three_point(d) -> bool:
    return all(d[x, y] <= max(d[x, z], d[y, z]) for x, y, z in itertools.permutations(d.labels, 3))


def enumerate_ultrametric_uprootings(t) -> list:
    """Every ultrametric uprooting of ``t``, one per orientation pattern.

    Each edge is oriented one way or the other, or subdivided by a new root.
    Leaf edges must point into the leaf (or carry a root). Given the pattern,
    ultrametricity pins every weight: tree-vertex heights follow from the
    oriented edges and each new root's split is the one levelling its two
    sides, so a pattern yields at most one network.
    """
    edges = sorted(tuple(sorted(e)) for e in t.edge_weights())
    lam = {e: t.weight(*e) for e in edges}
    options = []
    for u, v in edges:
        if t.is_leaf(u) and t.is_leaf(v):
            options.append(["root"])
        elif t.is_leaf(v):
            options.append([(u, v), "root"])
        elif t.is_leaf(u):
            options.append([(v, u), "root"])
        else:
            options.append([(u, v), (v, u), "root"])
    found = []
    for pattern in itertools.product(*options):
        kids = {v: [] for v in t.vertices}
        for e, choice in zip(edges, pattern):
            if choice != "root":
                kids[choice[0]].append((choice[1], lam[e]))
        if any(not kids[v] for v in t.vertices if not t.is_leaf(v)):
            continue
        height = {}
        ok = True

        def h(v):
            nonlocal ok
            if v in height:
                return height[v]
            vals = {w + h(c) for c, w in kids[v]} if kids[v] else {Fraction(0)}
            if len(vals) != 1:
                ok = False
            height[v] = min(vals)
            return height[v]

        for v in t.vertices:
            h(v)
        if not ok:
            continue
        arcs = {}
        fresh = max(t.vertices) + 1
        for e, choice in zip(edges, pattern):
            if choice == "root":
                u, v = e
                wu = (lam[e] + height[v] - height[u]) / 2
                wv = lam[e] - wu
                if wu <= 0 or wv <= 0:
                    ok = False
                    break
                arcs[(fresh, u)] = wu
                arcs[(fresh, v)] = wv
                fresh += 1
            else:
                arcs[choice] = lam[e]
        if ok:
            found.append(ArborealNetwork(arcs, t.labels))
    return found


# -- relaxed topologies for partial distances ---------------------------------


def _prufer_decode(seq, m):
    degree = [1] * m
    for s in seq:
        degree[s] += 1
    heap = [i for i in range(m) if degree[i] == 1]
    heapq.heapify(heap)
    edges = []
    for s in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(heap, s)
    u, v = heapq.heappop(heap), heapq.heappop(heap)
    edges.append((u, v))
    return edges


@lru_cache(maxsize=None)
def relaxed_topologies(n: int) -> tuple:
    """All relaxed arboreal network shapes on leaves 0..n-1 without outdegree-1 vertices.

    Every such network is an oriented tree on the leaves plus k <= n-1
    internal vertices (each internal vertex has outdegree >= 2 and arcs
    outnumber internal vertices by n-1). Trees are enumerated through
    Pruefer sequences and all orientations of internal-internal edges are
    tried. A shape is returned as (lca, arcs): ``lca[i][j]`` is the internal
    vertex index of the unique lowest common ancestor or None, and ``arcs``
    lists (parent, child) with leaves encoded as ("leaf", i).
    """
    shapes = {}
    for k in range(1, n):
        m = n + k
        internal = set(range(n, m))
        for seq in itertools.product(range(m), repeat=m - 2):
            if not internal.issubset(seq):
                continue
            edges = _prufer_decode(seq, m)
            if any(u < n and v < n for u, v in edges):
                continue
            free = [(u, v) for u, v in edges if u >= n and v >= n]
            fixed = [(u, v) if v < n else (v, u) for u, v in edges if (u < n) != (v < n)]
            for flips in itertools.product((False, True), repeat=len(free)):
                arcs = fixed + [(v, u) if f else (u, v) for (u, v), f in zip(free, flips)]
                key, shape = _shape(n, m, arcs)
                if key is not None and key not in shapes:
                    shapes[key] = shape
    return tuple(shapes.values())


def _shape(n, m, arcs):
    kids = {v: [] for v in range(m)}
    for u, v in arcs:
        kids[u].append(v)
    if any(len(kids[v]) < 2 for v in range(n, m)):
        return None, None
    below = {}

    def leaves_below(v):
        if v not in below:
            below[v] = frozenset([v]) if v < n else frozenset().union(*(leaves_below(c) for c in kids[v]))
        return below[v]

    for v in range(m):
        leaves_below(v)
    clusters = [below[v] for v in range(n, m)]
    # distinct vertices of such a network have distinct clusters
    assert len(set(clusters)) == len(clusters), "two internal vertices share a cluster"
    anc = {x: {v for v in range(n, m) if x in below[v]} for x in range(n)}
    lca = [[None] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        common = anc[i] & anc[j]
        minimal = [v for v in common if not any(w != v and below[w] < below[v] for w in common)]
        assert len(minimal) <= 1, "lowest common ancestor is not unique"
        if minimal:
            lca[i][j] = lca[j][i] = minimal[0] - n
    idx = {v: v - n for v in range(n, m)}
    shape_arcs = tuple((idx[u], ("leaf", v) if v < n else idx[v]) for u, v in arcs)
    key = frozenset((below[u], below[v]) for u, v in arcs)
    return key, (tuple(map(tuple, lca)), shape_arcs, m - n)


def brute_arboreal_ultrametric(d) -> bool:
    """Whether some relaxed ultrametric arboreal network induces ``d``.

    For a fixed shape the heights are forced: an internal vertex sits at half
    the distance of any pair it is the lca of. The shape works iff those
    values agree, every pair without an lca is infinite, and heights strictly
    drop along every arc (positive weights).
    """
    n = len(d.labels)
    for lca, arcs, k in relaxed_topologies(n):
        height = [None] * k
        ok = True
        for i, j in itertools.combinations(range(n), 2):
            val = d.value(i, j)
            v = lca[i][j]
            if v is None:
                if val is not INF:
                    ok = False
                    break
                continue
            if val is INF or (height[v] is not None and height[v] != val / 2):
                ok = False
                break
            height[v] = val / 2
        if not ok:
            continue
        if any(h is None for h in height):
            continue
        if all(height[u] > (0 if isinstance(c, tuple) else height[c]) for u, c in arcs):
            return True
    return False


# -- symbolic-map conditions on accepted inputs -------------------------------


def a_conditions(d, ptolemaic) -> dict:
    """Truth of the four symbolic-arboreal-map conditions; ``ptolemaic`` is a graph predicate."""
    labels = d.labels
    fin = lambda x, y: d[x, y] is not INF  # noqa: E731
    from arboreal import UndirectedGraph

    g = UndirectedGraph(labels, [(x, y) for x, y in itertools.combinations(labels, 2) if fin(x, y)])
    a1 = brute_connected(g) and ptolemaic(g)
    a2 = not any(
        fin(x, y) and fin(x, z) and fin(y, z) and len({d[x, y], d[x, z], d[y, z]}) == 3
        for x, y, z in itertools.combinations(labels, 3)
    )
    a3 = not any(
        d[x, y] == d[y, z] == d[z, u] != d[z, x] == d[x, u] == d[u, y] and fin(x, y) and fin(x, z)
        for x, y, z, u in itertools.permutations(labels, 4)
    )
    a4 = True
    for x, y, z, u in itertools.permutations(labels, 4):
        others = [(x, y), (x, z), (x, u), (y, z), (y, u)]
        if not fin(z, u) and all(fin(*p) for p in others):
            if d[x, z] != d[y, z] or d[x, u] != d[y, u]:
                a4 = False
    return {"A1": a1, "A2": a2, "A3": a3, "A4": a4}


# -- small tree shapes ---------------------------------------------------------

# Every unrooted phylogenetic tree shape with at most five leaves; leaves are
# the vertices named by letters. Weights are assigned by the caller.
SMALL_SHAPES = (
    [("a", "b")],
    [("o", "a"), ("o", "b"), ("o", "c")],
    [("o", "a"), ("o", "b"), ("o", "c"), ("o", "d")],
    [("o", "a"), ("o", "b"), ("o", "p"), ("p", "c"), ("p", "d")],
    [("o", "a"), ("o", "b"), ("o", "c"), ("o", "d"), ("o", "e")],
    [("o", "a"), ("o", "b"), ("o", "p"), ("p", "c"), ("p", "d"), ("p", "e")],
    [("o", "a"), ("o", "b"), ("o", "p"), ("p", "c"), ("p", "q"), ("q", "d"), ("q", "e")],
)


def weighted_small_trees(weights=(1, 2, 3)):
    from arboreal.phylo import build_named_tree

    for shape in SMALL_SHAPES:
        for ws in itertools.product(weights, repeat=len(shape)):
            tree, _ = build_named_tree([(u, v, Fraction(w)) for (u, v), w in zip(shape, ws)])
            yield tree
