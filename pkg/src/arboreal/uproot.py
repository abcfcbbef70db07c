"""Ultrametric uprooting of weighted phylogenetic trees.

Two independent constructions live here: the incremental cherry-picking
algorithm, and a direct orientation of every tree edge from closest-leaf
sets. Both return networks whose non-root vertices reuse the tree's vertex
ids; roots of outdegree two that subdivide a tree edge get fresh ids above
the largest tree id.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .network import ArborealNetwork, InvalidNetwork, underlying_weighted_tree, validate
from .phylo import (
    WeightedPhyloTree,
    compute_wcps,
    is_wcps,
    restrict,
    tree_from_distance,
    trees_isomorphic,
)

__all__ = [
    "UprootingStep",
    "NotAWcps",
    "uprooting_steps",
    "ultrametric_uprooting",
    "uprooting_via_orientation",
    "closest_leaves",
    "is_weight_preserving_uprooting",
    "uproot_distance",
]

# Case numbers pair the placement of v (subdivide below x / use the other
# child of p_x / reuse p_x) with the attachment of x_i (arc from v / new root).
_CASES = {("below", "down"): 1, ("below", "top"): 2, ("other", "down"): 3,
          ("other", "top"): 4, ("reuse", "down"): 5, ("reuse", "top"): 6}


class NotAWcps(ValueError):
    pass


@dataclass(frozen=True)
class UprootingStep:
    leaf: str
    case: int  # 0 for the initial two-leaf network
    network: ArborealNetwork


class _State:
    """Mutable arc store used while the algorithm runs."""

    def __init__(self, first_fresh: int):
        self.children: dict = {}
        self.parents: dict = {}
        self.labels: dict = {}
        self.fresh = first_fresh
        self.fresh_ids: set = set()

    def new_root_id(self) -> int:
        r = self.fresh
        self.fresh += 1
        self.fresh_ids.add(r)
        self.children[r] = {}
        self.parents[r] = {}
        return r

    def ensure(self, v):
        self.children.setdefault(v, {})
        self.parents.setdefault(v, {})

    def add(self, u, v, w):
        assert w > 0, f"nonpositive weight {w} on arc ({u},{v})"
        self.ensure(u)
        self.ensure(v)
        self.children[u][v] = w
        self.parents[v][u] = w

    def remove(self, u, v):
        del self.children[u][v]
        del self.parents[v][u]

    def rename(self, old, new):
        assert new not in self.children, f"vertex {new} already in the network"
        self.children[new] = self.children.pop(old)
        self.parents[new] = self.parents.pop(old)
        for c, w in self.children[new].items():
            del self.parents[c][old]
            self.parents[c][new] = w
        for p, w in self.parents[new].items():
            del self.children[p][old]
            self.children[p][new] = w
        self.fresh_ids.discard(old)

    def down_length(self, v) -> Fraction:
        """l(v, z) for the first leaf z reached by following smallest-id children.

        Every other descendant leaf is checked to lie at the same length.
        """
        lengths = []
        stack = [(v, Fraction(0))]
        while stack:
            u, acc = stack.pop()
            cs = self.children[u]
            if not cs:
                lengths.append((u, acc))
            for c in sorted(cs, reverse=True):
                stack.append((c, acc + cs[c]))
        first = lengths[0][1]
        assert all(l == first for _, l in lengths), f"network not ultrametric below {v}"
        return first

    def snapshot(self) -> ArborealNetwork:
        arcs = {(u, v): w for u, cs in self.children.items() for v, w in cs.items()}
        return ArborealNetwork(arcs, self.labels)


def uprooting_steps(t: WeightedPhyloTree, seq: Sequence[str] | None = None, *, rng=None) -> list[UprootingStep]:
    """Run the uprooting loop, returning the network after every step.

    ``seq`` must be a weighted cherry-picking sequence; by default one is
    computed. With ``rng`` the sequence (when not given) and every choice of
    the sibling leaf x are randomized.
    """
    if seq is None:
        seq = compute_wcps(t, rng)
    else:
        seq = tuple(seq)
        chk = is_wcps(t, seq)
        if not chk:
            raise NotAWcps(f"not a weighted cherry-picking sequence: {chk.message}")
    st = _State(max(t.vertices) + 1)
    x1, x2 = t.leaf(seq[0]), t.leaf(seq[1])
    lam2 = restrict(t, seq[:2]).weight(x1, x2)
    r = st.new_root_id()
    st.add(r, x1, lam2 / 2)
    st.add(r, x2, lam2 / 2)
    st.labels[x1], st.labels[x2] = seq[0], seq[1]
    steps = [UprootingStep(seq[1], 0, st.snapshot())]

    for i in range(3, len(seq) + 1):
        ti = restrict(t, seq[:i])
        xi = t.leaf(seq[i - 1])
        (vi,) = ti.neighbors(xi)
        lam_i = ti.weight(vi, xi)
        sibs = sorted(ti.labels[w] for w in ti.neighbors(vi) if ti.is_leaf(w) and w != xi)
        if not sibs:
            raise NotAWcps(f"{seq[i - 1]} is not in a cherry at step {i}")
        xl = sibs[0] if rng is None else rng.choice(sibs)
        x = t.leaf(xl)
        (px,) = st.parents[x]
        wx = st.children[px][x]
        lx = ti.weight(vi, x)

        if wx > lx:
            place = "below"
            v = vi
            assert v not in st.children, f"tree vertex {v} already placed"
            st.remove(px, x)
            st.add(px, v, wx - lx)
            st.add(v, x, lx)
        elif wx < lx:
            place = "other"
            assert px in st.fresh_ids and len(st.children[px]) == 2 and not st.parents[px], \
                f"parent {px} of {xl} is not an outdegree-2 root"
            (u,) = (c for c in st.children[px] if c != x)
            wu = st.children[px][u]
            if lx == wx + wu:
                v = u
                assert v == vi, f"expected vertex {vi}, found {v}"
            else:
                v = vi
                assert v not in st.children, f"tree vertex {v} already placed"
                st.remove(px, u)
                st.add(px, v, lx - wx)
                st.add(v, u, wu + wx - lx)
        else:
            place = "reuse"
            v = px
            if px in st.fresh_ids:
                st.rename(px, vi)
                v = vi
            assert v == vi, f"expected vertex {vi}, found {v}"

        lvz = st.down_length(v)
        st.labels[xi] = seq[i - 1]
        if lam_i == lvz:
            attach = "down"
            if place == "other":
                raise AssertionError("unreachable case: sibling subdivision with a direct leaf arc")
            st.add(v, xi, lam_i)
        else:
            attach = "top"
            r = st.new_root_id()
            st.add(r, v, (lam_i - lvz) / 2)
            st.add(r, xi, (lam_i + lvz) / 2)
        steps.append(UprootingStep(seq[i - 1], _CASES[(place, attach)], st.snapshot()))

    tree_ids = set(t.vertices)
    kept = set(st.children) - st.fresh_ids
    assert kept == tree_ids, "network vertices do not match the tree vertices"
    return steps


def ultrametric_uprooting(t: WeightedPhyloTree, seq: Sequence[str] | None = None, *, rng=None) -> ArborealNetwork:
    """The ultrametric uprooting of ``t`` via weighted cherry picking."""
    return uprooting_steps(t, seq, rng=rng)[-1].network


# -- orientation construction -----------------------------------------------


def _leaf_distances(t: WeightedPhyloTree) -> dict:
    """vertex -> {leaf label: distance}."""
    out = {}
    for v in t.vertices:
        dist = {v: Fraction(0)}
        stack = [v]
        while stack:
            u = stack.pop()
            for w, lam in t.neighbors(u).items():
                if w not in dist:
                    dist[w] = dist[u] + lam
                    stack.append(w)
        out[v] = {t.labels[x]: dist[x] for x in t.leaves}
    return out


def closest_leaves(t: WeightedPhyloTree, v) -> frozenset:
    """Labels of the leaves nearest to vertex ``v``."""
    t.neighbors(v)
    dist = {v: Fraction(0)}
    stack = [v]
    while stack:
        u = stack.pop()
        for w, lam in t.neighbors(u).items():
            if w not in dist:
                dist[w] = dist[u] + lam
                stack.append(w)
    best = min(dist[x] for x in t.leaves)
    return frozenset(t.labels[x] for x in t.leaves if dist[x] == best)


def _sides(t: WeightedPhyloTree) -> dict:
    """(u, v) -> labels of the leaves on v's side of edge {u, v}."""
    root = min(t.vertices)
    parent = {root: None}
    order = [root]
    for u in order:
        for w in sorted(t.neighbors(u)):
            if w not in parent:
                parent[w] = u
                order.append(w)
    below = {}
    for u in reversed(order):
        acc = {t.labels[u]} if t.is_leaf(u) else set()
        for w in t.neighbors(u):
            if parent.get(w) == u:
                acc |= below[w]
        below[u] = frozenset(acc)
    every = frozenset(t.taxa)
    out = {}
    for c, p in parent.items():
        if p is not None:
            out[(p, c)] = below[c]
            out[(c, p)] = every - below[c]
    return out


def uprooting_via_orientation(t: WeightedPhyloTree) -> ArborealNetwork:
    """Orient each edge toward the closest leaves; edges pointing neither way get a new root."""
    dist = _leaf_distances(t)
    m = {v: min(d.values()) for v, d in dist.items()}
    cl = {v: frozenset(x for x, l in d.items() if l == m[v]) for v, d in dist.items()}
    side = _sides(t)
    arcs = {}
    fresh = max(t.vertices) + 1
    for e, lam in sorted(t.edge_weights().items(), key=lambda p: sorted(p[0])):
        u, v = sorted(e)
        v_to_u = bool(cl[v] & side[(v, u)])
        u_to_v = bool(cl[u] & side[(u, v)])
        assert not (u_to_v and v_to_u), f"edge {{{u},{v}}} oriented both ways"
        if v_to_u:
            arcs[(v, u)] = lam
        elif u_to_v:
            arcs[(u, v)] = lam
        else:
            r = fresh
            fresh += 1
            wu = (lam + m[v] - m[u]) / 2
            wv = (lam + m[u] - m[v]) / 2
            assert wu > 0 and wv > 0, f"nonpositive root weights on edge {{{u},{v}}}"
            arcs[(r, u)] = wu
            arcs[(r, v)] = wv
    return ArborealNetwork(arcs, t.labels)


# -- checks and pipelines ---------------------------------------------------


def is_weight_preserving_uprooting(n: ArborealNetwork, t: WeightedPhyloTree) -> bool:
    """Whether the weighted underlying tree of ``n`` is isomorphic to ``t``."""
    if not validate(n).ok:
        return False
    try:
        u = underlying_weighted_tree(n)
    except (InvalidNetwork, ValueError):
        return False
    return trees_isomorphic(u, t)


def uproot_distance(d) -> ArborealNetwork:
    """Distance -> unique tree -> ultrametric uprooting."""
    return ultrametric_uprooting(tree_from_distance(d))
