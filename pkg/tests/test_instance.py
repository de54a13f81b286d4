import pytest
from hypothesis import given, settings, strategies as st

from simgraph import (
    ForcedNotSupported,
    IllegalEdge,
    IllegalForced,
    ParseError,
    SharedInstance,
    XInducedMismatch,
    complement_pair,
    load_fixture,
    parse_instance,
    serialize_instance,
    union_graph,
)
from simgraph.oracle import random_instance

from conftest import edge_names, ids_of


def test_parse_singleton():
    inst = parse_instance("V1: a\nV2: a\nE1:\nE2:\n")
    assert inst.x == (0,)
    assert not inst.g1.edges and not inst.g2.edges


def test_parse_cycle8_counts(fixtures):
    inst = fixtures["cycle8"]
    assert inst.g1.n == 6 and inst.g2.n == 6
    assert len(inst.x) == 4
    assert len(inst.g1.edges) == 4 and len(inst.g2.edges) == 4


def test_x_induced_mismatch():
    with pytest.raises(XInducedMismatch):
        parse_instance("V1: a b\nV2: a b\nE1: a-b\nE2:\n")


@pytest.mark.parametrize(
    "text,err",
    [
        ("V1: a\nV2: a\nE1: a-a\nE2:\n", IllegalEdge),
        ("V1: a b\nV2: a\nE1: a-b a-b\nE2:\n", IllegalEdge),
        ("V1: a b\nV2: a c\nE1: b-c\nE2:\n", IllegalEdge),
        ("V1: a b\nV2: a c\nE1:\nE2:\nF: a-c\n", IllegalForced),
        ("V1: a b\nV2: a c\nE1:\nE2:\nF: b-a\n", IllegalForced),
        ("V1: a\nV2: a\nE1:\n", ParseError),
        ("V1: a\nV1: b\nV2: a\nE1:\nE2:\n", ParseError),
        ("V1: a-b\nV2: a\nE1:\nE2:\n", ParseError),
        ("V1: a\nV2: a\nE1: a-z\nE2:\n", ParseError),
        ("hello\n", ParseError),
        ("V1: a a\nV2: a\nE1:\nE2:\n", ParseError),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_instance(text)


def test_comments_and_blank_lines():
    inst = parse_instance("# heading\nV1: a b  # trailing\n\nV2: a\nE1: a-b\nE2:\n")
    assert len(inst.g1.edges) == 1


def test_forced_round_trip():
    text = "V1: a b p\nV2: a b q\nE1: a-b\nE2: a-b\nF: p-q\n"
    inst = parse_instance(text)
    assert edge_names(inst, inst.forced) == {("p", "q")}
    assert parse_instance(serialize_instance(inst)) == inst


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 10**6),
    st.sampled_from([(4, 4, 2), (5, 3, 1), (6, 6, 3), (3, 3, 0), (2, 5, 2), (1, 1, 1)]),
    st.sampled_from([0.0, 0.2, 0.5, 0.8, 1.0]),
)
def test_serialize_parse_round_trip(seed, shape, prob):
    inst = random_instance(*shape, prob, seed)
    text = serialize_instance(inst)
    again = parse_instance(text)
    assert again == inst
    assert serialize_instance(again) == text


def test_complement_pair_on_p3pair(fixtures):
    co = complement_pair(fixtures["p3pair"])
    assert edge_names(co, co.g1.edges) == {("a", "c")}
    assert edge_names(co, co.g2.edges) == {("b", "d")}


def test_complement_pair_of_shared_triangle():
    inst = SharedInstance.from_names(
        "abc", "abc", [("a", "b"), ("b", "c"), ("a", "c")], [("a", "b"), ("b", "c"), ("a", "c")]
    )
    co = complement_pair(inst)
    assert not co.g1.edges and not co.g2.edges


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(4, 4, 2), (5, 5, 3), (3, 4, 1)]))
def test_complement_pair_is_involution(seed, shape):
    inst = random_instance(*shape, 0.4, seed)
    assert complement_pair(complement_pair(inst)) == inst


def test_complement_pair_rejects_forced():
    inst = parse_instance("V1: a p\nV2: a q\nE1:\nE2:\nF: p-q\n")
    with pytest.raises(ForcedNotSupported):
        complement_pair(inst)


def test_union_graph_cycle8_is_the_8_cycle(fixtures):
    inst = fixtures["cycle8"]
    g = union_graph(inst)
    assert g.n == 8
    expected = {
        ("u1", "x1"), ("u1", "x2"), ("u2", "x3"), ("u2", "x4"),
        ("w1", "x2"), ("w1", "x3"), ("w2", "x4"), ("w2", "x1"),
    }
    assert edge_names(inst, g.edges) == expected
    assert all(g.degree(v) == 2 for v in g.vertices)


def test_union_graph_fan_with_fill(fixtures):
    inst = fixtures["fan"]
    g = union_graph(inst, [ids_of(inst, "u", "w")])
    assert g.n == 6
    # 3 shared path edges + two 4-edge stars + the added u-w edge
    assert len(g.edges) == 12


def test_union_graph_p3pair(fixtures):
    inst = fixtures["p3pair"]
    g = union_graph(inst, [ids_of(inst, "c", "d")])
    assert len(g.edges) == 4


def test_union_graph_includes_forced():
    inst = parse_instance("V1: a p\nV2: a q\nE1: a-p\nE2:\nF: p-q\n")
    g = union_graph(inst)
    assert edge_names(inst, g.edges) == {("a", "p"), ("p", "q")}


def test_union_graph_rejects_non_augmenting_pairs(fixtures):
    inst = fixtures["fan"]
    with pytest.raises(IllegalEdge):
        union_graph(inst, [ids_of(inst, "a", "b")])
    with pytest.raises(IllegalEdge):
        union_graph(inst, [ids_of(inst, "u", "a")])


def test_all_fixtures_parse(fixtures):
    c5 = fixtures["c5full"]
    assert len(c5.x) == 5 and len(c5.g1.edges) == 5
    assert fixtures["emptyx"].x == ()
    fan = fixtures["fan"]
    assert len(fan.x) == 4 and len(fan.g1.edges) == 7


def test_optional_pairs(fixtures):
    inst = fixtures["cycle8"]
    assert len(inst.optional_pairs()) == 4
    assert len(fixtures["c5full"].optional_pairs()) == 0
