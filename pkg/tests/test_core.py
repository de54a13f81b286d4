import itertools

import pytest
from hypothesis import given, settings, strategies as st

from simgraph import Graph, IllegalEdge, find_peo, hat, inverse, is_peo, is_transitive

from conftest import (
    brute_peo_exists,
    brute_transitive,
    complete_graph,
    cycle_graph,
    graph_from_pairs,
    path_graph,
    random_graph,
)


@st.composite
def small_graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return graph_from_pairs(n, edges)


@st.composite
def directed_sets(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    return frozenset(draw(st.sets(st.sampled_from(pairs))))


def test_adjacency_is_symmetric_and_loop_free():
    g = Graph.from_names("abc", [("a", "b"), ("b", "c")])
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert not g.has_edge(0, 0)
    assert g.neighbors(1) == (0, 2)
    assert g.degree(1) == 2


@pytest.mark.parametrize(
    "edges",
    [
        [("a", "a")],
        [("a", "b"), ("b", "a")],
        [("a", "b"), ("a", "b")],
        [("a", "z")],
    ],
)
def test_bad_edges_rejected(edges):
    with pytest.raises(IllegalEdge):
        Graph.from_names("abc", edges)


def test_complement_and_subgraph():
    g = path_graph(4)
    co = g.complement()
    assert co.edges == frozenset({(0, 2), (0, 3), (1, 3)})
    assert co.complement() == g
    sub = g.subgraph([1, 2, 3])
    assert sub.edges == frozenset({(1, 2), (2, 3)})


def test_find_peo_on_triangle_prefers_small_ids():
    assert find_peo(complete_graph(3)) == (0, 1, 2)


def test_find_peo_rejects_cycles():
    assert find_peo(cycle_graph(4)) is None
    assert find_peo(cycle_graph(5)) is None
    assert find_peo(cycle_graph(6)) is None


def test_find_peo_is_deterministic():
    g = random_graph(9, 0.4, seed=42)
    assert find_peo(g) == find_peo(g)


def test_is_peo_rejects_non_permutations():
    g = complete_graph(3)
    assert not is_peo(g, (0, 1))
    assert not is_peo(g, (0, 1, 1))
    assert not is_peo(g, (0, 1, 2, 3))


def test_is_peo_on_known_orders():
    g = path_graph(4)
    assert is_peo(g, (0, 3, 1, 2))
    assert not is_peo(cycle_graph(4), (0, 1, 2, 3))


@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_find_peo_agrees_with_ordering_search(g):
    order = find_peo(g)
    if order is not None:
        assert is_peo(g, order)
    assert (order is not None) == brute_peo_exists(g)


@settings(max_examples=120, deadline=None)
@given(directed_sets())
def test_is_transitive_agrees_with_triple_loop(t):
    assert is_transitive(t) == brute_transitive(t)


def test_is_transitive_examples():
    assert is_transitive({(0, 1), (1, 2), (0, 2)})
    assert not is_transitive({(0, 1), (1, 2)})
    assert not is_transitive({(0, 1), (1, 0)})
    assert is_transitive(frozenset())


@settings(max_examples=60, deadline=None)
@given(directed_sets())
def test_inverse_involution_and_hat(t):
    assert inverse(inverse(t)) == t
    assert hat(t) == t | inverse(t)
    assert hat(t) == hat(inverse(t))
