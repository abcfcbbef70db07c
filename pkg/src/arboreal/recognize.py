"""Recognition and reconstruction of arboreal ultrametrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .graph import (
    Check,
    UndirectedGraph,
    chordality_certificate,
    connected_components,
    find_induced_gem,
    find_induced_w5,
    is_connected,
    maximal_cliques_chordal,
)
from .matrix import PartialDistance
from .network import (
    ArborealNetwork,
    induced_partial_distance,
    is_ultrametric_network,
    validate,
)
from .phylo import ultrametric_hierarchy
from .rational import INF, format_number

__all__ = [
    "RecognitionReport",
    "NotArborealUltrametric",
    "ReconstructionError",
    "support_graph",
    "check_u1",
    "check_u2",
    "check_u3",
    "recognize",
    "check_gem_free_consequence",
    "reconstruct",
    "restriction_is_arboreal",
]


@dataclass(frozen=True)
class RecognitionReport:
    u1: Check
    u2: Check
    u3: Check

    @property
    def verdict(self) -> bool:
        return self.u1.ok and self.u2.ok and self.u3.ok

    def __bool__(self):
        return self.verdict

    def lines(self) -> list[str]:
        out = []
        for name, c in (("U1", self.u1), ("U2", self.u2), ("U3", self.u3)):
            out.append(f"{name}: pass" if c.ok else f"{name}: FAIL  {c.message}")
        out.append("verdict: arboreal ultrametric" if self.verdict else "verdict: rejected")
        return out


class NotArborealUltrametric(ValueError):
    def __init__(self, report: RecognitionReport):
        failed = next(c for c in (report.u1, report.u2, report.u3) if not c.ok)
        super().__init__(failed.message)
        self.report = report


class ReconstructionError(RuntimeError):
    """The glued network failed its own verification; this signals a bug."""


def support_graph(d: PartialDistance) -> UndirectedGraph:
    """Graph on the labels (ids 0..n-1 in matrix order) with an edge at every finite entry."""
    n = len(d)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if d.value(i, j) is not INF]
    return UndirectedGraph(range(n), edges, dict(enumerate(d.labels)))


def check_u1(d: PartialDistance) -> Check:
    g = support_graph(d)
    if not is_connected(g):
        comps = connected_components(g)
        parts = [tuple(sorted((d.labels[i] for i in c), key=d.index)) for c in comps]
        text = " | ".join("{" + ",".join(p) + "}" for p in parts)
        return Check(False, tuple(parts), f"U1 violated: support graph is disconnected: {text}")
    cert = chordality_certificate(g)
    if not cert.chordal:
        cyc = tuple(d.labels[i] for i in cert.cycle)
        return Check(False, cyc, f"U1 violated: induced cycle ({','.join(cyc)}) of length {len(cyc)}")
    return Check(True)


def check_u2(d: PartialDistance) -> Check:
    """Three-point condition on every triple with three finite entries."""
    hit = kernels.u2_violation(d.rank_matrix())
    if hit is None:
        return Check(True)
    x, y, z = (d.labels[i] for i in hit)
    f = format_number
    return Check(False, (x, y, z),
                 f"U2 violated by ({x},{y},{z}): {f(d[x, y])} > max({f(d[x, z])},{f(d[y, z])})")


def check_u3(d: PartialDistance) -> Check:
    """Strict inequality for quadruples whose only infinite pair is {z, u}."""
    hit = kernels.u3_violation(d.rank_matrix())
    if hit is None:
        return Check(True)
    x, y, z, u = (d.labels[i] for i in hit)
    f = format_number
    mixed = ",".join(f(d[p, q]) for p, q in ((x, z), (x, u), (y, z), (y, u)))
    return Check(False, (x, y, z, u),
                 f"U3 violated by ({x},{y},{z},{u}): D({x},{y})={f(d[x, y])} is not below min({mixed}) "
                 f"while D({z},{u})=inf")


def recognize(d: PartialDistance) -> RecognitionReport:
    return RecognitionReport(check_u1(d), check_u2(d), check_u3(d))


def check_gem_free_consequence(d: PartialDistance) -> bool:
    """The support graph of a partial distance satisfying U3 has no induced gem or W5."""
    g = support_graph(d)
    return find_induced_gem(g) is None and find_induced_w5(g) is None


def reconstruct(d: PartialDistance) -> ArborealNetwork:
    """The unique ultrametric arboreal network without outdegree-1 vertices representing ``d``.

    Built by gluing the equidistant trees of the maximal cliques of the
    support graph on equal leaf clusters. The result is relaxed (leaves may
    have several parents) and is verified before it is returned.
    """
    report = recognize(d)
    if not report.verdict:
        raise NotArborealUltrametric(report)
    g = support_graph(d)
    cert = chordality_certificate(g)
    cliques = [frozenset(d.labels[i] for i in c) for c in maximal_cliques_chordal(g, cert)]

    height: dict = {}
    arcs_c: set = set()
    for k in cliques:
        hier = ultrametric_hierarchy(d, k)
        for c, (h, kids) in hier.items():
            if height.setdefault(c, h) != h:
                raise ReconstructionError(f"cluster {sorted(c)} gets two heights")
            for kid in kids:
                arcs_c.add((c, kid))

    order = sorted(height, key=lambda c: (-len(c), sorted(map(d.index, c))))
    ids = {c: i + 1 for i, c in enumerate(order)}
    arcs = {(ids[p], ids[c]): height[p] - height[c] for p, c in arcs_c}
    labels = {ids[c]: next(iter(c)) for c in order if len(c) == 1}
    n = ArborealNetwork(arcs, labels, relaxed=True)

    rep = validate(n)
    if not rep.ok:
        raise ReconstructionError(f"glued network is invalid: {rep}")
    if not is_ultrametric_network(n).ok:
        raise ReconstructionError("glued network is not ultrametric")
    if any(len(n.children(v)) == 1 for v in n.vertices):
        raise ReconstructionError("glued network has an outdegree-1 vertex")
    if induced_partial_distance(n) != d:
        raise ReconstructionError("glued network does not induce the input partial distance")
    return n


def restriction_is_arboreal(d: PartialDistance, keep: Iterable[str]) -> bool:
    """For an arboreal ultrametric ``d``: whether its restriction to ``keep`` is one too."""
    keep = list(dict.fromkeys(keep))
    if len(keep) < 2:
        raise ValueError("restriction needs at least two labels")
    unknown = [y for y in keep if y not in d.labels]
    if unknown:
        raise ValueError(f"unknown labels {unknown}")
    return is_connected(support_graph(d).induced(d.index(y) for y in keep))
