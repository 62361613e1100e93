import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinwpd.defgraph import (
    DefiningGraph,
    GraphFormatError,
    check_hypotheses,
    complement_graph,
    enumerate_cliques,
    format_graph,
    is_cone,
    is_irreducible,
    join_decompose,
    maximal_cliques,
    parse_graph,
    t_graph,
)
from artinwpd.quotient import build_quotient
from graphs import complete, cycle, g4, random_decomposable, star


def edge_set(sg):
    return {frozenset(e) for e in sg.edges}


@st.composite
def labeled_graphs(draw, max_vertices=7, labels=(2, 3, 4)):
    n = draw(st.integers(1, max_vertices))
    names = [f"v{i}" for i in range(n)]
    edges = []
    for u, w in itertools.combinations(names, 2):
        m = draw(st.sampled_from((None,) + tuple(labels)))
        if m is not None:
            edges.append((u, w, m))
    return DefiningGraph.from_edges(names, edges)


# parsing ---------------------------------------------------------------


def test_parse_g4_document():
    text = "# G4\nvertices: a b c d\n\nedge: a c 3\nedge: a d 2\nedge: b c 2\nedge: b d 2\n"
    g = parse_graph(text)
    assert g == g4()
    assert g.vertices == ("a", "b", "c", "d")
    assert g.label("c", "a") == 3
    assert g.label("a", "b") is None


def test_parse_vertices_over_several_lines_and_trailing_comment():
    g = parse_graph("vertices: a b\nvertices: c  # more\nedge: c a 5\n")
    assert g.vertices == ("a", "b", "c")
    assert g.label("a", "c") == 5


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("vertices: a a\n", 1, "duplicate vertex"),
        ("vertices: a b\nedge: a z 2\n", 2, "unknown vertex"),
        ("vertices: a b\nedge: a a 2\n", 2, "self-loop"),
        ("vertices: a b\nedge: a b x\n", 2, "not an integer"),
        ("vertices: a b\n\nedge: a b 1\n", 3, "< 2"),
        ("vertices: a b\nedge: a b 2\nedge: b a 3\n", 3, "duplicate edge"),
        ("vertices: a b\nedges: a b 2\n", 2, "unknown keyword"),
        ("vertices: a b\nedge: a b\n", 2, "edge line"),
        ("a b\n", 1, "expected"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert fragment in str(info.value)


@given(labeled_graphs())
def test_format_parse_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_from_edges_rejects_bad_labels():
    with pytest.raises(GraphFormatError):
        DefiningGraph.from_edges("ab", [("a", "b", 1)])
    with pytest.raises(GraphFormatError):
        DefiningGraph.from_edges("ab", [("a", "b", 2), ("b", "a", 2)])


# complement and t-graph -------------------------------------------------


def test_complement_of_g4():
    assert edge_set(complement_graph(g4())) == {frozenset("ab"), frozenset("cd")}


def test_complement_of_complete_and_edgeless():
    assert edge_set(complement_graph(complete(3))) == set()
    edgeless = DefiningGraph.from_edges("abc", [])
    assert edge_set(complement_graph(edgeless)) == {frozenset(p) for p in itertools.combinations("abc", 2)}


def test_t_graph_of_g4_is_connected():
    t = t_graph(g4())
    assert edge_set(t) == {frozenset("ac"), frozenset("ab"), frozenset("cd")}
    assert t.is_connected()


def test_t_graph_of_commuting_square_is_disconnected():
    sq = g4().relabel("a", "c", 2)
    t = t_graph(sq)
    assert edge_set(t) == {frozenset("ab"), frozenset("cd")}
    assert not t.is_connected()


def test_t_graph_of_all_two_complete_graph_is_edgeless():
    assert edge_set(t_graph(complete(4))) == set()


@given(labeled_graphs())
def test_complement_is_an_involution_on_edge_sets(g):
    once = complement_graph(g)
    as_graph = DefiningGraph(g.vertices, {e: 2 for e in once.edges})
    assert edge_set(complement_graph(as_graph)) == {frozenset(e) for e in g.labels}


@given(labeled_graphs())
def test_t_graph_edges_are_non_edges_or_large_labels(g):
    t = edge_set(t_graph(g))
    for u, w in g.pairs():
        m = g.label(u, w)
        assert (frozenset((u, w)) in t) == (m is None or m >= 3)


# join decomposition ------------------------------------------------------


def test_join_decompose_g4():
    dec = join_decompose(g4())
    assert dec.k == 2
    assert dec.factors == (("a", "b"), ("c", "d"))
    assert dec.factor_of("d") == 2


def test_five_cycle_is_indecomposable():
    # The complement of a 5-cycle is again a 5-cycle.
    for label in (2, 3, 7):
        assert join_decompose(cycle(5, label)).k == 1


def test_complete_graph_splits_into_singletons():
    dec = join_decompose(complete(3, 3))
    assert dec.k == 3
    assert dec.factors == (("v0",), ("v1",), ("v2",))


@given(labeled_graphs())
def test_factors_partition_vertices_in_document_order(g):
    dec = join_decompose(g)
    flat = [v for f in dec.factors for v in f]
    assert sorted(flat) == sorted(g.vertices)
    assert len(flat) == len(set(flat))
    firsts = [g.index(f[0]) for f in dec.factors]
    assert firsts == sorted(firsts)
    for f in dec.factors:
        assert [g.index(v) for v in f] == sorted(g.index(v) for v in f)


@given(labeled_graphs())
def test_factors_are_pairwise_joined(g):
    dec = join_decompose(g)
    for a, b in itertools.combinations(dec.factors, 2):
        assert all(g.has_edge(u, w) for u in a for w in b)


# cone and irreducibility --------------------------------------------------


def test_cone_examples():
    assert is_cone(star(3))
    assert not is_cone(g4())
    assert not is_cone(cycle(5))


def test_irreducibility_examples():
    assert is_irreducible(g4())
    assert not is_irreducible(g4().relabel("a", "c", 2))
    assert is_irreducible(DefiningGraph.from_edges("a", []))


@settings(max_examples=60)
@given(st.randoms(use_true_random=False), st.integers(2, 4))
def test_irreducible_iff_quotient_connected(rng, k):
    sizes = [rng.randint(1, 3) for _ in range(k)]
    g, _ = random_decomposable(rng, k, sizes, cross_labels=(2, 2, 3))
    dec = join_decompose(g)
    assert dec.k == k
    assert is_irreducible(g) == build_quotient(dec, g).is_connected()


# cliques -------------------------------------------------------------------


def test_cliques_of_g4():
    got = enumerate_cliques(g4())
    assert [tuple(sorted(c)) for c in got] == [
        (),
        ("a",), ("b",), ("c",), ("d",),
        ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
    ]


def test_cliques_of_triangle_and_edgeless_pair():
    assert len(enumerate_cliques(complete(3, 5))) == 8
    assert enumerate_cliques(DefiningGraph.from_edges("ab", [])) == [
        frozenset(), frozenset("a"), frozenset("b"),
    ]


def test_clique_cap():
    with pytest.raises(ValueError):
        enumerate_cliques(complete(5), cap=4)


@given(labeled_graphs(max_vertices=8))
def test_cliques_match_brute_force_and_are_downward_closed(g):
    brute = {
        frozenset(s)
        for size in range(len(g.vertices) + 1)
        for s in itertools.combinations(g.vertices, size)
        if all(g.has_edge(u, w) for u, w in itertools.combinations(s, 2))
    }
    got = enumerate_cliques(g)
    assert set(got) == brute
    assert len(got) == len(brute)
    for c in got:
        for v in c:
            assert c - {v} in brute
    keys = [(len(c), sorted(g.index(v) for v in c)) for c in got]
    assert keys == sorted(keys)


def test_maximal_cliques_generic_keys():
    adj = {1: {2, 3}, 2: {1, 3}, 3: {1, 2, 4}, 4: {3}}
    assert sorted(map(sorted, maximal_cliques(adj))) == [[1, 2, 3], [3, 4]]


# hypotheses ------------------------------------------------------------------


def test_hypotheses_g4_eligible():
    rep = check_hypotheses(g4())
    assert rep.construction_eligible and rep.status == "eligible"
    assert rep.to_dict()["factors"] == [["a", "b"], ["c", "d"]]


def test_hypotheses_star_is_a_cone():
    rep = check_hypotheses(star(3))
    assert not rep.construction_eligible
    assert not rep.not_cone
    assert rep.status == "ineligible"


def test_hypotheses_five_cycle_deferred():
    rep = check_hypotheses(cycle(5, 3))
    assert not rep.construction_eligible
    assert not rep.decomposable
    assert rep.status == "deferred"
    assert rep.message == "indecomposable: construction deferred to prior work"


def test_hypotheses_small_and_reducible():
    assert check_hypotheses(complete(2, 3)).status == "ineligible"
    rep = check_hypotheses(g4().relabel("a", "c", 2))
    assert not rep.irreducible and "reducible" in rep.message


def test_random_decomposable_builder_sanity():
    rng = random.Random(3)
    g, factors = random_decomposable(rng, 3, [2, 3, 2])
    assert sorted(map(sorted, join_decompose(g).factors)) == sorted(map(sorted, factors))
