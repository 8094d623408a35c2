"""BHV tree space: validation, orthants, enumeration, the origin link,
the truncated complex, and cone distances."""

from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubical import (
    cone_distance,
    count_binary,
    enumerate_topologies,
    from_orthant,
    is_cat0,
    is_locally_cat0,
    link_of_origin,
    make_orthant,
    to_orthant,
    treespace_complex,
    validate_tree,
)
from cubical.errors import (
    BadRootValencyError,
    CyclicError,
    IncompatibleClustersError,
    InteriorValencyTwoError,
    LeafCountMismatchError,
    NonPositiveLengthError,
    UnlabeledLeafError,
)
from cubical.graphs import girth, graph_isomorphic, is_regular
from cubical.treespace import compatible, dump_orthant, dump_tree, load_orthant

PETERSEN = {
    0: {1, 4, 5}, 1: {0, 2, 6}, 2: {1, 3, 7}, 3: {2, 4, 8}, 4: {0, 3, 9},
    5: {0, 7, 8}, 6: {1, 8, 9}, 7: {2, 5, 9}, 8: {3, 5, 6}, 9: {4, 6, 7},
}


def tree_json(n, edges, leaf_labels, root="r", nodes=None):
    if nodes is None:
        nodes = sorted({root} | {e[0] for e in edges} | {e[1] for e in edges},
                       key=str)
    return {"n": n, "root": root, "nodes": nodes, "edges": edges,
            "leaf_labels": leaf_labels}


def caterpillar4(a=1.0, b=1.0):
    """((1,2),3),4 with clusters {1,2} and {1,2,3}."""
    edges = [["r", "u", b], ["u", "v", a], ["v", "l1", 0], ["v", "l2", 0],
             ["u", "l3", 0], ["r", "l4", 0]]
    return tree_json(4, edges, {"l1": 1, "l2": 2, "l3": 3, "l4": 4})


# ---------------------------------------------------------------------------
# validation


def test_cherry_is_valid():
    t = validate_tree(tree_json(2, [["r", "a", 0], ["r", "b", 0]],
                                {"a": 1, "b": 2}))
    assert t.n == 2
    assert to_orthant(t).topology == frozenset()


def test_caterpillar_clusters():
    t = validate_tree(caterpillar4(a=0.5, b=1.25))
    o = to_orthant(t)
    assert o.lengths == {frozenset({1, 2}): 0.5, frozenset({1, 2, 3}): 1.25}


def test_star_tree_is_origin():
    t = validate_tree(tree_json(
        4, [["r", f"l{i}", 1.0] for i in range(1, 5)],
        {f"l{i}": i for i in range(1, 5)}))
    assert to_orthant(t).topology == frozenset()
    assert t.notes  # leaf lengths ignored with a note


def test_same_tree_two_drawings():
    # identical metric labeled trees given with different node names and
    # different edge orders canonicalize to the same orthant
    one = validate_tree(caterpillar4(a=2.0, b=3.0))
    edges = [["root", "x4", 0], ["root", "w", 3.0], ["w", "x3", 0],
             ["w", "z", 2.0], ["z", "x2", 0], ["z", "x1", 0]]
    other = validate_tree(tree_json(4, edges,
                                    {"x1": 1, "x2": 2, "x3": 3, "x4": 4},
                                    root="root"))
    assert to_orthant(one) == to_orthant(other)


def test_zero_length_edges_collapse():
    data = caterpillar4(a=0.0, b=1.0)
    t = validate_tree(data)
    assert to_orthant(t).topology == {frozenset({1, 2, 3})}


def test_interior_valency_two_rejected():
    edges = [["r", "a", 1], ["a", "b", 1], ["b", "l1", 0], ["b", "l2", 0],
             ["r", "l3", 0]]
    with pytest.raises(InteriorValencyTwoError):
        validate_tree(tree_json(3, edges, {"l1": 1, "l2": 2, "l3": 3}))


def test_bad_root_valency_rejected():
    edges = [["r", "a", 1], ["a", "l1", 0], ["a", "l2", 0]]
    with pytest.raises(BadRootValencyError):
        validate_tree(tree_json(2, edges, {"l1": 1, "l2": 2}))


def test_negative_length_rejected():
    with pytest.raises(NonPositiveLengthError):
        validate_tree(caterpillar4(a=-1.0))


def test_unlabeled_leaf_rejected():
    edges = [["r", "a", 0], ["r", "b", 0]]
    with pytest.raises(UnlabeledLeafError):
        validate_tree(tree_json(2, edges, {"a": 1}))


def test_cycle_rejected():
    edges = [["r", "a", 1], ["a", "b", 1], ["b", "a", 1], ["r", "c", 0]]
    with pytest.raises(CyclicError):
        validate_tree(tree_json(2, edges, {"b": 1, "c": 2},
                                nodes=["r", "a", "b", "c"]))


# ---------------------------------------------------------------------------
# orthants


def test_orthant_round_trip_all_binary_4():
    rng = random.Random(3)
    for topology in enumerate_topologies(4):
        coords = {c: rng.uniform(0.1, 2.0) for c in topology}
        o = make_orthant(4, coords)
        assert to_orthant(from_orthant(o)) == o


def test_from_orthant_rejects_incompatible():
    with pytest.raises(IncompatibleClustersError):
        make_orthant(4, {frozenset({1, 2}): 1.0, frozenset({2, 3}): 1.0})


def test_orthant_json_round_trip():
    o = make_orthant(4, {frozenset({1, 2}): 0.5, frozenset({1, 2, 3}): 1.25})
    assert load_orthant(dump_orthant(o)) == o


def test_tree_json_round_trip():
    t = validate_tree(caterpillar4(a=0.5, b=1.25))
    again = validate_tree(dump_tree(t))
    assert to_orthant(again) == to_orthant(t)


def test_interior_edge_bound():
    for topology in enumerate_topologies(5):
        assert len(topology) == 3  # n - 2, binary
    o = make_orthant(5, {frozenset({1, 2}): 1.0})
    t = from_orthant(o)
    assert len(to_orthant(t).topology) == 1  # non-binary face


# ---------------------------------------------------------------------------
# counting and enumeration


def test_schroeder_counts():
    assert [count_binary(n) for n in range(2, 8)] == [1, 3, 15, 105, 945, 10395]


@pytest.mark.parametrize("n", range(2, 8))
def test_enumeration_matches_formula(n):
    tops = enumerate_topologies(n)
    assert len(tops) == count_binary(n)
    assert len(set(tops)) == len(tops)
    for t in tops:
        assert len(t) == max(n - 2, 0)
        for a, b in itertools.combinations(t, 2):
            assert compatible(a, b)


# ---------------------------------------------------------------------------
# the origin link


def test_link_n3_is_three_points():
    link = link_of_origin(3)
    assert len(link.vertices) == 3
    assert not link.edges


def test_link_n4_is_petersen():
    link = link_of_origin(4)
    adj = link.adjacency
    assert len(link.vertices) == 10
    assert len(link.edges) == 15
    assert is_regular(adj, 3)
    assert girth(adj) == 5
    assert graph_isomorphic(adj, PETERSEN)
    # maximal simplices have size n - 2 = 2
    assert max(len(s) for s in link.simplices) == 2


def test_link_n5_simplices_reach_dimension():
    link = link_of_origin(5)
    assert max(len(s) for s in link.simplices) == 3
    assert len([s for s in link.simplices if len(s) == 3]) == count_binary(5)


# ---------------------------------------------------------------------------
# the truncated complex


def test_treespace_3_is_tripod():
    x = treespace_complex(3)
    assert len(x.vertices) == 4
    assert len(x.edges) == 3
    assert x.dim == 1
    assert is_cat0(x).ok


def test_treespace_4_counts():
    x = treespace_complex(4)
    assert len(x.vertices) == 26  # origin + 10 clusters + 15 binary sets
    assert len(x.squares) == 15
    origin_edges = [e for e in x.edges if "*" in e]
    assert len(origin_edges) == 10
    assert is_locally_cat0(x).ok
    assert is_cat0(x).ok


def test_treespace_5_is_cat0():
    x = treespace_complex(5)
    assert len(x.by_dim[3]) == count_binary(5)
    assert is_cat0(x).ok


# ---------------------------------------------------------------------------
# distances


def test_same_topology_distance():
    t1 = validate_tree(caterpillar4(a=1.0, b=2.0))
    t2 = validate_tree(caterpillar4(a=4.0, b=6.0))
    res = cone_distance(t1, t2)
    assert res.exact
    assert res.value == pytest.approx(5.0)  # sqrt(9 + 16)


def test_tripod_distance_between_rays():
    def ray(cluster, length):
        return from_orthant(make_orthant(3, {frozenset(cluster): length}))

    t1 = ray({1, 2}, 2.0)
    t2 = ray({1, 3}, 1.5)
    res = cone_distance(t1, t2)
    assert res.exact
    assert res.value == pytest.approx(3.5)  # through the origin
    res = cone_distance(t1, ray({1, 2}, 0.5))
    assert res.exact and res.value == pytest.approx(1.5)


def test_incompatible_topologies_upper_bound():
    t1 = from_orthant(make_orthant(
        4, {frozenset({1, 2}): 3.0, frozenset({1, 2, 3}): 4.0}))
    t2 = from_orthant(make_orthant(
        4, {frozenset({1, 3}): 1.0, frozenset({1, 3, 4}): 1.0}))
    res = cone_distance(t1, t2)
    assert not res.exact
    assert res.path == "cone"
    assert res.value == pytest.approx(5.0 + math.sqrt(2.0))


def test_shared_face_beats_cone_path():
    t1 = from_orthant(make_orthant(
        4, {frozenset({1, 2}): 1.0, frozenset({1, 2, 3}): 2.0}))
    t2 = from_orthant(make_orthant(
        4, {frozenset({1, 2}): 1.0, frozenset({1, 2, 4}): 2.0}))
    res = cone_distance(t1, t2)
    assert res.path == "bent"
    cone = to_orthant(t1).norm() + to_orthant(t2).norm()
    assert res.value <= cone
    assert res.value == pytest.approx(4.0)  # unfolds to a straight segment


def test_leaf_count_mismatch():
    t3 = from_orthant(make_orthant(3, {frozenset({1, 2}): 1.0}))
    t4 = from_orthant(make_orthant(4, {frozenset({1, 2}): 1.0}))
    with pytest.raises(LeafCountMismatchError):
        cone_distance(t3, t4)


def test_upper_bound_dominates_exact_on_shared_topologies():
    rng = random.Random(9)
    for topology in enumerate_topologies(4)[:6]:
        p = make_orthant(4, {c: rng.uniform(0.5, 2) for c in topology})
        q = make_orthant(4, {c: rng.uniform(0.5, 2) for c in topology})
        exact = cone_distance(from_orthant(p), from_orthant(q))
        cone = p.norm() + q.norm()
        assert exact.exact
        assert exact.value <= cone + 1e-12


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_metric_axioms_sampled(data):
    topology = min(enumerate_topologies(4),
                   key=lambda t: sorted(sorted(c) for c in t))
    lengths = st.floats(0.1, 5.0, allow_nan=False)
    coords = {c: data.draw(lengths) for c in topology}
    coords2 = {c: data.draw(lengths) for c in topology}
    coords3 = {c: data.draw(lengths) for c in topology}
    trees = [from_orthant(make_orthant(4, c)) for c in (coords, coords2, coords3)]
    d12 = cone_distance(trees[0], trees[1]).value
    d21 = cone_distance(trees[1], trees[0]).value
    assert d12 == pytest.approx(d21)
    d13 = cone_distance(trees[0], trees[2]).value
    d23 = cone_distance(trees[1], trees[2]).value
    assert d13 <= d12 + d23 + 1e-9
    assert cone_distance(trees[0], trees[0]).value == 0.0


def test_tripod_triangle_inequality_exhaustive():
    pts = [(c, l) for c in ({1, 2}, {1, 3}, {2, 3}) for l in (0.5, 1.0, 2.0)]
    trees = [from_orthant(make_orthant(3, {frozenset(c): l})) for c, l in pts]
    for a, b, c in itertools.product(trees, repeat=3):
        dab = cone_distance(a, b).value
        dbc = cone_distance(b, c).value
        dac = cone_distance(a, c).value
        assert dac <= dab + dbc + 1e-12


def test_treespace_bound_enforced():
    from cubical.errors import CapExceededError

    with pytest.raises(CapExceededError):
        treespace_complex(7)
    with pytest.raises(CapExceededError):
        treespace_complex(5, cap=10)


def test_binary_trees_have_binary_valencies():
    # |clusters| = n - 2 exactly when the root has 2 children and every
    # other interior node has 2 children (valency 3)
    for topology in enumerate_topologies(5):
        t = from_orthant(make_orthant(5, {c: 1.0 for c in topology}))
        assert len(t.children[t.root]) == 2
        for node, kids in t.children.items():
            if kids and node != t.root:
                assert len(kids) == 2
    partial = from_orthant(make_orthant(5, {frozenset({1, 2}): 1.0}))
    assert len(to_orthant(partial).topology) < 3
    assert len(partial.children[partial.root]) > 2
