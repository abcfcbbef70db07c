import random
from fractions import Fraction

import pytest

import oracles
import samples
from arboreal import (
    INF,
    ArborealNetwork,
    InvalidNetwork,
    canonical_form,
    descendant_leaves,
    heights,
    induced_partial_distance,
    is_isomorphic,
    is_ultrametric_network,
    lca,
    leaf_distance_matrix,
    shared_ancestry_graph,
    underlying_weighted_tree,
    validate,
)
from arboreal.generate import random_arboreal_network, random_equidistant_network
from arboreal.network import (
    contract_arc,
    induced_distance,
    normalize_leaves,
    subdivide_arc,
    suppress_outdegree1,
    suppress_vertex,
)
from arboreal.phylo import trees_isomorphic

WALK = samples.name_ids(samples.WALK_ARCS)


def jiggle(rng, n):
    """Same shape with fresh random weights, so usually not ultrametric."""
    arcs = {a: Fraction(rng.randint(1, 6), rng.choice((1, 2))) for a in n.arcs}
    return ArborealNetwork(arcs, n.labels, relaxed=n.relaxed)


def relabel(rng, n):
    """Copy of n with its vertex ids shuffled."""
    old = sorted(n.vertices)
    new = rng.sample(range(100, 100 + 3 * len(old)), len(old))
    phi = dict(zip(old, new))
    return ArborealNetwork({(phi[u], phi[v]): w for (u, v), w in n.arcs.items()},
                           {phi[v]: lab for v, lab in n.labels.items()}, relaxed=n.relaxed)


def random_networks(seed, count, max_leaves=12):
    rng = random.Random(seed)
    for i in range(count):
        k = rng.randint(2, max_leaves)
        n = random_arboreal_network(rng, k) if i % 3 else random_equidistant_network(rng, k)
        yield rng, (jiggle(rng, n) if i % 2 else n)


@pytest.mark.parametrize("make", [
    samples.walk_network, samples.walk_normal, samples.three_root_network, samples.seven_leaf_network, samples.two_root_network,
])
def test_sample_networks_are_valid(make):
    assert validate(make()).ok


@pytest.mark.parametrize("arcs, labels, clause", [
    ({(1, 2): 1, (1, 3): 1, (4, 2): 1, (4, 3): 1, (2, 5): 1, (2, 6): 1, (3, 7): 1, (3, 8): 1},
     {5: "a", 6: "b", 7: "c", 8: "d"}, "arboreal"),
    ({(1, 2): 1, (2, 3): 1, (1, 4): 1}, {3: "a", 4: "b"}, "degree"),
    ({(1, 2): 1, (2, 3): 1, (2, 4): 1}, {3: "a", 4: "b"}, "root-outdegree"),
    ({(1, 2): 1, (1, 3): 0}, {2: "a", 3: "b"}, "weights"),
    ({(1, 2): 1, (2, 3): 1, (3, 2): 1, (1, 4): 1, (3, 5): 1}, {4: "x", 5: "y"}, "acyclic"),
    ({(1, 2): 1, (1, 3): 1, (4, 5): 1, (4, 6): 1}, {2: "a", 3: "b", 5: "c", 6: "d"}, "connected"),
    ({(1, 2): 1, (1, 3): 1, (1, 4): 1}, {2: "a", 3: "b"}, "labels"),
    ({(1, 2): 1, (1, 3): 1, (4, 3): 1, (4, 5): 1}, {2: "a", 3: "b", 5: "c"}, "leaf-indegree"),
    ({(1, 2): 1, (1, 3): 1}, {2: "a", 3: "a"}, "labels"),
])
def test_validation_failures(arcs, labels, clause):
    rep = validate(ArborealNetwork(arcs, labels))
    assert not rep.ok and rep.clause == clause
    with pytest.raises(InvalidNetwork):
        ArborealNetwork(arcs, labels).require_valid()


def test_extra_arc_breaks_arboreality():
    arcs = dict(samples.THREE_ROOT_ARCS)
    arcs[("R1", "U")] = 1
    rep = validate(samples.named_network(arcs))
    assert rep.clause == "arboreal"


def test_relaxed_flag_controls_leaf_indegree():
    strict = samples.named_network(samples.WALK_NORMAL_ARCS)
    assert validate(strict).clause == "leaf-indegree"
    assert validate(samples.walk_normal()).ok


def test_descendants_and_lca_examples():
    n = samples.walk_network()
    assert descendant_leaves(n, WALK["V6"]) == {"c"}
    assert descendant_leaves(n, WALK["R3"]) == set("abc")
    assert descendant_leaves(n, WALK["R5"]) == set("ce")
    assert lca(n, "a", "b") == WALK["R2"]
    assert lca(n, "a", "c") == WALK["R3"]
    assert lca(n, "e", "c") == WALK["R5"]
    assert lca(n, "a", "d") is None and lca(n, "d", "e") is None
    with pytest.raises(ValueError):
        lca(n, "a", "a")


def test_descendants_and_lca_agree_with_brute_force():
    for _, n in random_networks(11, 40):
        for v in n.vertices:
            assert descendant_leaves(n, v) == oracles.brute_descendant_leaves(n, v)
        taxa = n.taxa
        for i, x in enumerate(taxa):
            for y in taxa[i + 1:]:
                brute = oracles.brute_lcas(n, x, y)
                assert len(brute) <= 1
                assert lca(n, x, y) == (next(iter(brute)) if brute else None)


def test_shared_ancestry_examples():
    assert samples.edge_names(shared_ancestry_graph(samples.seven_leaf_network())) == samples.SEVEN_LEAF_SHARED
    assert samples.edge_names(shared_ancestry_graph(samples.two_root_network())) == {"xy", "xz", "yz", "ux", "uy"}


def test_underlying_tree_examples():
    assert trees_isomorphic(underlying_weighted_tree(samples.walk_network()), samples.walk_tree())
    assert trees_isomorphic(underlying_weighted_tree(samples.three_root_network()), samples.six_leaf_tree())
    t = underlying_weighted_tree(samples.two_root_network())
    v = next(iter(t.neighbors(t.leaf("x"))))
    assert {t.label(u): t.weight(v, u) for u in t.neighbors(v)} == {"x": 1, "y": 1, "z": 3, "u": 5}
    with pytest.raises(InvalidNetwork):
        underlying_weighted_tree(ArborealNetwork({(1, 2): 1, (2, 3): 1, (1, 4): 1}, {3: "a", 4: "b"}))


def test_partial_distance_examples():
    assert induced_partial_distance(samples.walk_network()) == samples.walk_partial()
    assert induced_partial_distance(samples.two_root_network()) == samples.two_root_partial()
    d = induced_partial_distance(samples.three_root_network())
    assert d["a", "d"] == 10 and d["a", "f"] is INF and d["e", "f"] == 6
    assert induced_partial_distance(samples.walk_normal()) == samples.walk_partial()


def test_partial_distance_agrees_with_brute_force():
    for _, n in random_networks(12, 60):
        d = induced_partial_distance(n)
        for (x, y), v in oracles.brute_partial_distance(n).items():
            assert d[x, y] == v


def test_tree_distance_examples():
    assert induced_distance(samples.walk_network()) == leaf_distance_matrix(samples.walk_tree())
    assert induced_distance(samples.walk_normal()) == leaf_distance_matrix(samples.walk_tree())
    assert induced_distance(samples.three_root_network()) == leaf_distance_matrix(samples.six_leaf_tree())


def test_ultrametric_examples():
    for make in (samples.walk_network, samples.three_root_network, samples.two_root_network, samples.walk_normal):
        assert is_ultrametric_network(make()).ok
    assert not is_ultrametric_network(samples.seven_leaf_network()).ok
    arcs = dict(samples.WALK_ARCS)
    arcs[("R5", "e")] = 4
    chk = is_ultrametric_network(samples.named_network(arcs))
    assert not chk.ok and chk.witness == (WALK["R5"], "c", "e")


def test_ultrametric_agrees_with_brute_force():
    outcomes = set()
    for _, n in random_networks(13, 60):
        ok = is_ultrametric_network(n).ok
        assert ok == oracles.brute_ultrametric(n)
        outcomes.add(ok)
    assert outcomes == {True, False}


def test_height_examples():
    h = heights(samples.walk_network())
    assert h.delta[WALK["R5"]] == 3 and h.delta[WALK["V6"]] == 1 and h.delta[WALK["a"]] == 0
    assert h.t[WALK["R3"]] == 4 and WALK["a"] not in h.t
    with pytest.raises(ValueError):
        heights(samples.seven_leaf_network())


def test_canonical_form_examples():
    rng = random.Random(14)
    n = samples.three_root_network()
    assert canonical_form(relabel(rng, n)) == canonical_form(n)
    arcs = dict(samples.THREE_ROOT_ARCS)
    arcs[("R2", "f")] = 4
    assert not is_isomorphic(samples.named_network(arcs), n)
    # same undirected tree, opposite orientation of one edge
    flipped = dict(samples.TWO_ROOT_ARCS)
    del flipped[("R1", "V")], flipped[("R2", "V")]
    flipped.update({("V", "R1"): 1, ("R1", "z"): 2, ("R2", "V"): 2})
    assert not is_isomorphic(samples.two_root_network(), samples.named_network(flipped))
    assert not is_isomorphic(samples.walk_network(), samples.walk_normal())


def test_canonical_form_agrees_with_brute_force():
    results = set()
    for rng, n in random_networks(15, 80, max_leaves=5):
        if len(n.vertices) > 10:
            continue
        copy = relabel(rng, n)
        assert is_isomorphic(n, copy) and oracles.brute_isomorphic(n, copy)
        other = jiggle(rng, copy) if rng.random() < 0.5 else relabel(rng, jiggle(rng, n))
        same = is_isomorphic(n, other)
        assert same == oracles.brute_isomorphic(n, other)
        results.add(same)
    assert False in results


def test_suppress_and_normalize_examples():
    assert is_isomorphic(suppress_outdegree1(samples.walk_network()), samples.walk_normal())
    assert is_isomorphic(normalize_leaves(samples.walk_normal()), samples.walk_network())
    n = samples.three_root_network()
    assert is_isomorphic(normalize_leaves(n), n)


def test_normalize_suppress_preserve_partial_distance():
    for _, n in random_networks(16, 40):
        d = induced_partial_distance(n)
        s = suppress_outdegree1(n)
        assert induced_partial_distance(s) == d
        assert validate(s).ok
        assert all(len(s.children(v)) != 1 for v in s.vertices)
        back = normalize_leaves(s)
        assert validate(back).ok and induced_partial_distance(back) == d


def test_arc_surgery():
    n = samples.two_root_network()
    ids = samples.name_ids(samples.TWO_ROOT_ARCS)
    sub, mid = subdivide_arc(n, (ids["R2"], ids["u"]), 1)
    assert sub.weight(ids["R2"], mid) == 1 and sub.weight(mid, ids["u"]) == 2
    assert validate(sub).clause == "degree"
    assert suppress_vertex(sub, mid) == n
    with pytest.raises(ValueError):
        subdivide_arc(n, (ids["R2"], ids["u"]), 3)
    with pytest.raises(ValueError):
        suppress_vertex(n, ids["V"])

    w = samples.walk_network()
    c = contract_arc(w, (WALK["R3"], WALK["R2"]))
    assert descendant_leaves(c, WALK["R3"]) == set("abc")
    assert c.weight(WALK["R3"], WALK["a"]) == 2
    # paths from R3 keep their length; a and b now meet at R3
    d, dc = induced_partial_distance(w), induced_partial_distance(c)
    assert dc["a", "c"] == d["a", "c"] and dc["a", "b"] == 4
    with pytest.raises(ValueError):
        contract_arc(w, (WALK["R3"], WALK["V6"]))
    with pytest.raises(ValueError):
        contract_arc(w, (WALK["V6"], WALK["c"]))


def test_random_network_invariants():
    for _, n in random_networks(17, 60):
        assert validate(n).ok
        assert len(n.arcs) == len(n.vertices) - 1
        for r in n.roots:
            assert len(n.children(r)) >= 2
        d = induced_partial_distance(n)
        assert all(v > 0 for _, _, v in d.finite_pairs())
        # every finite entry is the tree distance
        full = induced_distance(n)
        assert all(full[x, y] == v for x, y, v in d.finite_pairs())
