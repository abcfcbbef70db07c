"""Seeded random trees and networks for tests, benchmarks and ``arboreal gen``."""

from __future__ import annotations

import random
from fractions import Fraction

from .network import ArborealNetwork
from .phylo import WeightedPhyloTree
from .uproot import ultrametric_uprooting

__all__ = ["random_weight", "leaf_names", "random_tree", "random_equidistant_network",
           "random_arboreal_network"]


def random_weight(rng: random.Random) -> Fraction:
    """An integer in [1, 20] divided by 1, 2 or 4."""
    return Fraction(rng.randint(1, 20), 2 ** rng.randint(0, 2))


def leaf_names(n: int) -> list[str]:
    width = len(str(n))
    return [f"x{i:0{width}d}" for i in range(1, n + 1)]


def random_tree(rng: random.Random, n: int, weight=random_weight) -> WeightedPhyloTree:
    """Random weighted phylogenetic tree on ``n >= 2`` leaves.

    Leaves are added one at a time, either by subdividing a random edge or
    by hanging them off a random internal vertex.
    """
    if n < 2:
        raise ValueError("a tree needs at least two leaves")
    names = leaf_names(n)
    if n == 2:
        return WeightedPhyloTree({(1, 2): weight(rng)}, {1: names[0], 2: names[1]})
    # Start from a star on three leaves.
    edges = {(0, 1): weight(rng), (0, 2): weight(rng), (0, 3): weight(rng)}
    labels = {1: names[0], 2: names[1], 3: names[2]}
    internal = [0]
    nxt = 4
    for k in range(3, n):
        leaf = nxt
        nxt += 1
        if rng.random() < 0.5:
            e = rng.choice(sorted(edges))
            del edges[e]
            mid = nxt
            nxt += 1
            edges[(e[0], mid)] = weight(rng)
            edges[(mid, e[1])] = weight(rng)
            edges[(mid, leaf)] = weight(rng)
            internal.append(mid)
        else:
            edges[(rng.choice(internal), leaf)] = weight(rng)
        labels[leaf] = names[k]
    return WeightedPhyloTree(edges, labels)


def random_equidistant_network(rng: random.Random, n: int, weight=random_weight) -> ArborealNetwork:
    """Single-root ultrametric tree built by merging random clusters at increasing heights."""
    names = leaf_names(n)
    pool = [(i + 1, Fraction(0)) for i in range(n)]  # (vertex, height)
    labels = {i + 1: names[i] for i in range(n)}
    arcs = {}
    nxt = n + 1
    while len(pool) > 1:
        k = min(len(pool), rng.choice((2, 2, 2, 3)))
        rng.shuffle(pool)
        group, pool = pool[:k], pool[k:]
        h = max(hh for _, hh in group) + weight(rng)
        for v, hh in group:
            arcs[(nxt, v)] = h - hh
        pool.append((nxt, h))
        nxt += 1
    return ArborealNetwork(arcs, labels)


def random_arboreal_network(rng: random.Random, n: int, weight=random_weight) -> ArborealNetwork:
    """Ultrametric arboreal network: the uprooting of a random tree (usually several roots)."""
    return ultrametric_uprooting(random_tree(rng, n, weight))
