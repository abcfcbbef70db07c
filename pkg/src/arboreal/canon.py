"""AHU-style canonical encoding of trees with tagged vertices and edges."""

from __future__ import annotations

from typing import Callable, Hashable, Mapping, Sequence


def ahu_encode(
    adj: Mapping[Hashable, Sequence[tuple[Hashable, str]]],
    root: Hashable,
    node_tag: Callable[[Hashable], str],
) -> bytes:
    """Canonical string of the tree ``adj`` hung from ``root``.

    ``adj[v]`` lists ``(neighbour, edge_tag)`` pairs as seen from ``v``. Two
    trees with the same root tag get equal encodings iff there is a tag
    preserving isomorphism between them that maps root to root.
    """
    parent = {root: None}
    order = [root]
    # Iterative DFS keeps deep caterpillars clear of the recursion limit.
    stack = [root]
    while stack:
        v = stack.pop()
        for w, _ in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
                stack.append(w)
    if len(order) != len(adj):
        raise ValueError("graph is not connected")
    code: dict = {}
    for v in reversed(order):
        parts = sorted(f"{tag}{code[w]}" for w, tag in adj[v] if parent.get(w) == v and w != parent[v])
        code[v] = f"({node_tag(v)}|{','.join(parts)})"
    return code[root].encode()
