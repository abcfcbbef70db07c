"""Pure-Python versions of the hot scans.

Every function takes integer matrices (anything indexable as ``m[i][j]``)
and returns the lexicographically first witness, or None. Rank matrices
encode a partial distance by the order of its values: ``0`` on the
diagonal, ``1..K`` for finite entries in increasing value, ``-1`` for
infinity. The compiled kernels must return exactly the same witnesses.
"""

INF_RANK = -1


def _rows(m):
    return m.tolist() if hasattr(m, "tolist") else [list(r) for r in m]


def u2_violation(rank):
    """First (x, y, z), x < y, with all three entries finite and r[x][y] > max(r[x][z], r[y][z])."""
    r = _rows(rank)
    n = len(r)
    finite = [[j for j in range(n) if j != i and r[i][j] != INF_RANK] for i in range(n)]
    for x in range(n):
        rx = r[x]
        for y in range(x + 1, n):
            rxy = rx[y]
            if rxy == INF_RANK:
                continue
            ry = r[y]
            for z in finite[x]:
                if z == y:
                    continue
                ryz = ry[z]
                if ryz == INF_RANK:
                    continue
                if rxy > rx[z] and rxy > ryz:
                    return (x, y, z)
    return None


def u3_violation(rank):
    """First (x, y, z, u), x < y, z < u, with r[z][u] infinite, the other five finite, and
    r[x][y] not strictly below min(r[x][z], r[x][u], r[y][z], r[y][u])."""
    r = _rows(rank)
    n = len(r)
    nbrs = [frozenset(j for j in range(n) if j != i and r[i][j] != INF_RANK) for i in range(n)]
    for x in range(n):
        rx = r[x]
        for y in range(x + 1, n):
            rxy = rx[y]
            if rxy == INF_RANK:
                continue
            ry = r[y]
            common = sorted(nbrs[x] & nbrs[y])
            bad = {w for w in common if rx[w] <= rxy or ry[w] <= rxy}
            if not bad:
                continue
            for i, z in enumerate(common):
                rz = r[z]
                zbad = z in bad
                for u in common[i + 1:]:
                    if rz[u] == INF_RANK and (zbad or u in bad):
                        return (x, y, z, u)
    return None


def find_gem(adj):
    """First (apex, p1, p2, p3, p4): p1-p2-p3-p4 an induced path, apex adjacent to all four."""
    a = _rows(adj)
    n = len(a)
    nb = [[j for j in range(n) if a[i][j]] for i in range(n)]
    for x in range(n):
        ax = a[x]
        for p2 in nb[x]:
            a2 = a[p2]
            for p3 in nb[p2]:
                if not ax[p3]:
                    continue
                a3 = a[p3]
                for p1 in nb[p2]:
                    if p1 == p3 or p1 == x or not ax[p1] or a3[p1]:
                        continue
                    a1 = a[p1]
                    for p4 in nb[p3]:
                        if p4 == p2 or p4 == x or p4 == p1 or not ax[p4] or a2[p4] or a1[p4]:
                            continue
                        return (x, p1, p2, p3, p4)
    return None


def find_w5(adj):
    """First (apex, c1, c2, c3, c4): c1-c2-c3-c4-c1 an induced 4-cycle, apex adjacent to all four."""
    a = _rows(adj)
    n = len(a)
    nb = [[j for j in range(n) if a[i][j]] for i in range(n)]
    for x in range(n):
        ax = a[x]
        for c1 in nb[x]:
            a1 = a[c1]
            for c2 in nb[c1]:
                if c2 == x or not ax[c2]:
                    continue
                a2 = a[c2]
                for c4 in nb[c1]:
                    if c4 <= c2 or c4 == x or not ax[c4] or a2[c4]:
                        continue
                    a4 = a[c4]
                    for c3 in nb[c2]:
                        if c3 == c1 or c3 == x or not ax[c3] or not a4[c3] or a1[c3]:
                            continue
                        return (x, c1, c2, c3, c4)
    return None
