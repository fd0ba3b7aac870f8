import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactcount.trees import (
    InvalidTreeError,
    StableTree,
    automorphism_order,
    canonical_key,
    codimension,
    decompose_at_edge,
    enumerate_stable_trees,
    glue,
    max_vertices,
    single_vertex_tree,
    validate,
)
from oracles import brute_force_automorphisms, brute_force_classes, schroeder


def conic_trees():
    """The five positive trees with three leaves and degree two."""
    return {
        "irreducible": StableTree.build({"a": 2}, [], {1: "a", 2: "a", 3: "a"}),
        "12|3": StableTree.build({"a": 1, "b": 1}, [("a", "b")], {1: "a", 2: "a", 3: "b"}),
        "13|2": StableTree.build({"a": 1, "b": 1}, [("a", "b")], {1: "a", 3: "a", 2: "b"}),
        "23|1": StableTree.build({"a": 1, "b": 1}, [("a", "b")], {2: "a", 3: "a", 1: "b"}),
        "123|": StableTree.build({"a": 1, "b": 1}, [("a", "b")], {1: "a", 2: "a", 3: "a"}),
    }


def random_relabel(tree, rng):
    flags = list(tree.boundary)
    new_flags = rng.sample(range(1000, 1000 + 10 * len(flags)), len(flags))
    verts = list(tree.degrees)
    new_verts = rng.sample(range(len(verts) * 10), len(verts))
    return tree.relabel(dict(zip(flags, new_flags)), dict(zip(verts, new_verts)))


def to_tree(form_key):
    k, (edges, leafmap, degs) = form_key
    return StableTree.build(dict(enumerate(degs)), edges, {i + 1: v for i, v in enumerate(leafmap)})


# -- validation ---------------------------------------------------------------------


def test_conic_trees_are_stable_and_distinct():
    trees = conic_trees()
    assert all(validate(t) == [] for t in trees.values())
    keys = {canonical_key(t) for t in trees.values()}
    assert len(keys) == 5


def test_unstable_contracted_vertex_rejected():
    t = StableTree.build({"a": 0, "b": 1}, [("a", "b")], {1: "a"})
    assert any("valence" in p for p in validate(t))


def test_negative_degree_and_bad_labels_rejected():
    t = StableTree.build({"a": -1}, [], {1: "a", 2: "a", 3: "a"})
    assert validate(t)
    t = StableTree.build({"a": 1}, [], {1: "a", 3: "a"})
    assert validate(t)


def test_cycle_rejected():
    t = StableTree.build({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")], {})
    assert validate(t)


def test_disconnected_rejected():
    t = StableTree.build({"a": 1, "b": 1}, [], {})
    assert validate(t)


def test_relabel_requires_bijection():
    t = conic_trees()["12|3"]
    with pytest.raises(KeyError):
        t.relabel({}, {})


# -- enumeration -----------------------------------------------------------------------


def test_conic_enumeration_matches_named_trees():
    found = {k for k, _ in enumerate_stable_trees(3, 2, positive_only=True)}
    assert found == {canonical_key(t) for t in conic_trees().values()}


@pytest.mark.parametrize("m,expected", [(3, 1), (4, 4), (5, 26), (6, 236)])
def test_degree_zero_counts_are_schroeder_numbers(m, expected):
    assert len(enumerate_stable_trees(m, 0)) == expected == schroeder(m - 1)


def test_trivial_cases():
    assert len(enumerate_stable_trees(3, 0)) == 1
    assert enumerate_stable_trees(2, 0) == []
    assert len(enumerate_stable_trees(0, 1)) == 1
    assert len(enumerate_stable_trees(0, 3, positive_only=True)) == 3


SWEEP = [(m, d) for m in range(5) for d in range(5)]


@pytest.mark.parametrize("m,d", SWEEP)
def test_enumeration_agrees_with_brute_force(m, d):
    # exhaustive up to five vertices; larger trees are covered by the key tests below
    cap = 5
    oracle = {canonical_key(to_tree(form)): aut for form, aut in brute_force_classes(m, d, max_vertices=cap).items()}
    mine = {k: automorphism_order(t) for k, t in enumerate_stable_trees(m, d) if len(t.degrees) <= cap}
    assert mine == oracle


@pytest.mark.parametrize("m,d", [(3, 2), (4, 2), (2, 3), (0, 4), (1, 3)])
def test_enumeration_complete_against_brute_force(m, d):
    oracle = brute_force_classes(m, d)
    assert len(enumerate_stable_trees(m, d)) == len(oracle)


@pytest.mark.parametrize("m,d", SWEEP)
def test_positive_enumeration_agrees_with_brute_force(m, d):
    oracle = brute_force_classes(m, d, positive_only=True)
    assert len(enumerate_stable_trees(m, d, positive_only=True)) == len(oracle)


@pytest.mark.parametrize("m,d", [(m, d) for m in range(5) for d in range(5)])
def test_flag_vertex_relation(m, d):
    for _, t in enumerate_stable_trees(m, d):
        assert len(t.boundary) - 2 * len(t.degrees) == m - 2
        assert len(t.degrees) <= max_vertices(m, d)


def test_enumeration_is_sorted_and_deterministic():
    a = enumerate_stable_trees(4, 2)
    b = enumerate_stable_trees(4, 2)
    assert [k for k, _ in a] == sorted(k for k, _ in a) == [k for k, _ in b]


# -- canonical keys and automorphisms ---------------------------------------------------


def test_key_invariant_under_relabelling():
    rng = random.Random(7)
    trees = [t for _, t in enumerate_stable_trees(4, 3)]
    for t in rng.sample(trees, 40):
        key = canonical_key(t)
        for _ in range(100):
            assert canonical_key(random_relabel(t, rng)) == key


def test_key_separates_leaf_labels():
    trees = conic_trees()
    assert canonical_key(trees["12|3"]) != canonical_key(trees["23|1"])


def test_automorphisms_against_permutation_search():
    for m, d in [(0, 3), (0, 4), (1, 3), (2, 2), (3, 1)]:
        for _, t in enumerate_stable_trees(m, d):
            if len(t.degrees) <= 7:
                assert automorphism_order(t) == brute_force_automorphisms(t)


def test_named_automorphism_orders():
    star = StableTree.build({"c": 0, "x": 1, "y": 1, "z": 1}, [("c", "x"), ("c", "y"), ("c", "z")], {})
    assert automorphism_order(star) == 6
    edge = StableTree.build({"a": 1, "b": 1}, [("a", "b")], {})
    assert automorphism_order(edge) == 2
    assert automorphism_order(single_vertex_tree(3, 2)) == 1


def test_codimension_counts_contracted_vertices():
    t = StableTree.build({"c": 0, "x": 1, "y": 1, "z": 1}, [("c", "x"), ("c", "y"), ("c", "z")], {})
    assert codimension(t) == 1
    assert codimension(conic_trees()["12|3"]) == 0


# -- cutting and gluing -----------------------------------------------------------------


@pytest.mark.parametrize("m,d", [(3, 2), (4, 3), (2, 4), (5, 1)])
def test_decompose_glue_round_trip(m, d):
    for _, t in enumerate_stable_trees(m, d):
        for f, g in t.edges:
            split = decompose_at_edge(t, (f, g))
            assert not validate(split.sigma) and not validate(split.sigma_prime)
            assert split.sigma.d + split.sigma_prime.d == t.d
            assert split.sigma.m + split.sigma_prime.m == t.m + 2
            assert len(split.sigma.edges) + len(split.sigma_prime.edges) == len(t.edges) - 1
            assert canonical_key(glue(split)) == canonical_key(t)
            assert glue(split) == t


def test_decompose_by_single_flag_matches_pair():
    t = conic_trees()["12|3"]
    (f, g), = t.edges
    assert decompose_at_edge(t, g) == decompose_at_edge(t, (g, f))


def test_decompose_rejects_non_edge():
    t = conic_trees()["12|3"]
    leaf = next(iter(t.leaf_labels))
    with pytest.raises(ValueError):
        decompose_at_edge(t, leaf)


def test_split_relabels_leaves_in_order():
    t = conic_trees()["13|2"]
    (f, g), = t.edges
    split = decompose_at_edge(t, (f, g))
    assert split.labels == {1: 1, 2: 3, 3: None}
    assert split.labels_prime == {1: 2, 2: None}


# -- properties ----------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), st.integers(0, 3), st.randoms(use_true_random=False))
def test_random_tree_properties(m, d, rng):
    trees = enumerate_stable_trees(m, d)
    if not trees:
        assert m < 3 and d == 0 or (m, d) == (0, 0)
        return
    key, t = rng.choice(trees)
    assert canonical_key(random_relabel(t, rng)) == key
    assert len(t.boundary) - 2 * len(t.degrees) == m - 2
    for e in t.edges:
        assert canonical_key(glue(decompose_at_edge(t, e))) == key


def test_invalid_tree_error_is_value_error():
    assert issubclass(InvalidTreeError, ValueError)
