import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soficdual.graph import (
    Edge,
    GraphError,
    LabeledGraph,
    NotIrreducibleError,
    adjacency_matrix,
    format_graph,
    graph_period,
    is_irreducible,
    is_mixing,
    labeled_isomorphic,
    parse_graph,
    reverse_graph,
    strongly_connected_components,
    wielandt_bound,
)
from soficdual.intlinalg import IntMatrix, entrywise_positive_power, mat_pow, rank_exact, smith_normal_form

from helpers import FIG1_ORDER, graphs, random_graph
from oracles import isomorphic_brute_force, period_by_traces

TWO_CYCLE = LabeledGraph(("a", "b"), (Edge("a", "b", "x"), Edge("b", "a", "y")))


def test_parse_fig2(fig2):
    assert fig2.vertices == ("u'", "v'", "w'", "x'")
    assert len(fig2.edges) == 11
    assert fig2.alphabet == ("a", "a'", "b", "c", "d", "e", "f", "g")


def test_parse_small_and_errors():
    g = parse_graph("vertex p\nedge p p 0\nedge p p 1")
    assert g.vertices == ("p",) and len(g.edges) == 2
    with pytest.raises(GraphError, match="undeclared vertex 'b'") as info:
        parse_graph("vertex a\nedge a b 0")
    assert info.value.lineno == 2
    with pytest.raises(GraphError, match="duplicate"):
        parse_graph("vertex a\nvertex a")
    with pytest.raises(GraphError, match="line 1"):
        parse_graph("vertx a")
    with pytest.raises(GraphError):
        parse_graph("vertex a\nedge a a")


def test_parse_keeps_orders_and_comments():
    g = parse_graph("# hi\n\nvertex z\nvertex a\nedge a z q\n  # indented comment\nedge z a p\n")
    assert g.vertices == ("z", "a")
    assert g.edges == (Edge("a", "z", "q"), Edge("z", "a", "p"))


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_format_parse_round_trip(g):
    h = parse_graph(format_graph(g))
    assert h.vertices == g.vertices
    assert h.edge_multiset() == g.edge_multiset()


def test_invalid_graph_values():
    with pytest.raises(GraphError):
        LabeledGraph(("a", "a"))
    with pytest.raises(GraphError):
        LabeledGraph(("a",), (Edge("a", "b", "x"),))
    with pytest.raises(GraphError):
        LabeledGraph(("a b",))


def test_adjacency_examples(fig1, even, A):
    assert adjacency_matrix(fig1, FIG1_ORDER) == A
    assert adjacency_matrix(even) == IntMatrix.from_rows([[1, 1], [1, 0]])
    assert adjacency_matrix(LabeledGraph(("a", "b"))) == IntMatrix.zeros(2)
    with pytest.raises(GraphError):
        adjacency_matrix(fig1, ("u", "v"))


def test_only_one_ordering_reproduces_printed_A(fig1, A):
    hits = [o for o in itertools.permutations(fig1.vertices) if adjacency_matrix(fig1, o) == A]
    assert hits == [FIG1_ORDER]


def test_fig1_invariants_under_random_orderings(fig1):
    rng = random.Random(0)
    base = adjacency_matrix(fig1)
    factors = smith_normal_form(base).invariant_factors
    for _ in range(20):
        order = list(fig1.vertices)
        rng.shuffle(order)
        m = adjacency_matrix(fig1, order)
        assert rank_exact(m) == rank_exact(base)
        assert smith_normal_form(m).invariant_factors == factors
        assert entrywise_positive_power(m, 17) == entrywise_positive_power(base, 17)


def test_reverse_examples(fig1, even):
    g = LabeledGraph(("a", "b"), (Edge("a", "b", "x"),))
    assert reverse_graph(g).edges == (Edge("b", "a", "x"),)
    assert reverse_graph(reverse_graph(fig1)) == fig1
    assert reverse_graph(even).edge_multiset() == even.edge_multiset()


@settings(max_examples=100, deadline=None)
@given(graphs(max_vertices=6, max_edges=15))
def test_reverse_transposes_adjacency(g):
    assert adjacency_matrix(reverse_graph(g)) == adjacency_matrix(g).transpose()


def test_scc_examples(fig1):
    assert strongly_connected_components(fig1).blocks == (frozenset(fig1.vertices),)
    g = LabeledGraph(("a", "b"), (Edge("a", "b", "x"),))
    assert sorted(map(sorted, strongly_connected_components(g).blocks)) == [["a"], ["b"]]
    assert strongly_connected_components(LabeledGraph(("a",))).blocks == (frozenset({"a"}),)


@settings(max_examples=100, deadline=None)
@given(graphs(max_vertices=7, max_edges=12))
def test_scc_matches_mutual_reachability(g):
    reach = {v: {v} for v in g.vertices}
    changed = True
    while changed:
        changed = False
        for e in g.edges:
            for v in g.vertices:
                if e.source in reach[v] and e.target not in reach[v]:
                    reach[v].add(e.target)
                    changed = True
    part = strongly_connected_components(g)
    assert set().union(*part.blocks) == set(g.vertices)
    assert sum(len(b) for b in part.blocks) == len(g.vertices)
    for v in g.vertices:
        expected = {w for w in g.vertices if w in reach[v] and v in reach[w]}
        assert part.block_of(v) == expected


def test_irreducible_examples(fig1, even):
    assert is_irreducible(fig1)
    assert is_irreducible(even)
    assert not is_irreducible(LabeledGraph(("a",)))


def test_period_examples(fig1, even):
    assert graph_period(TWO_CYCLE) == 2
    assert graph_period(even) == 1
    assert graph_period(fig1) == 1
    with pytest.raises(NotIrreducibleError):
        graph_period(LabeledGraph(("a", "b"), (Edge("a", "b", "x"),)))


def test_mixing_examples(fig1, fig2, even, A):
    assert is_mixing(fig1) and is_mixing(fig2) and is_mixing(even)
    assert mat_pow(adjacency_matrix(even), 2) == IntMatrix.from_rows([[2, 1], [1, 1]])
    assert not is_mixing(TWO_CYCLE)
    assert not is_mixing(LabeledGraph(("a",)))


@settings(max_examples=150, deadline=None)
@given(graphs(max_vertices=6, max_edges=10, irreducible=True))
def test_period_and_power_methods_agree(g):
    m = adjacency_matrix(g)
    assert graph_period(g) == period_by_traces(m.to_rows())
    k = entrywise_positive_power(m, wielandt_bound(g.num_vertices))
    assert is_mixing(g) == (k is not None)


def test_isomorphism_examples(fig1, fig2, even):
    renamed = fig2.relabel_vertices({"u'": "1", "v'": "2", "w'": "3", "x'": "4"})
    bij = labeled_isomorphic(fig2, renamed)
    assert bij == {"u'": "1", "v'": "2", "w'": "3", "x'": "4"}
    assert labeled_isomorphic(fig1, fig2) is None
    swapped = LabeledGraph(even.vertices, tuple(Edge(e.source, e.target, {"0": "1", "1": "0"}[e.label]) for e in even.edges))
    assert labeled_isomorphic(even, swapped) is None


@settings(max_examples=100, deadline=None)
@given(graphs(max_vertices=5, max_edges=8, labels="ab"), st.randoms(use_true_random=False))
def test_isomorphism_reflexive_symmetric(g, rnd):
    names = list(g.vertices)
    shuffled = names[:]
    rnd.shuffle(shuffled)
    h = g.relabel_vertices(dict(zip(names, shuffled)))
    fwd = labeled_isomorphic(g, h)
    back = labeled_isomorphic(h, g)
    assert fwd is not None and back is not None
    assert g.relabel_vertices(fwd).edge_multiset() == h.edge_multiset()
    assert h.relabel_vertices(back).edge_multiset() == g.edge_multiset()
    assert labeled_isomorphic(g, g) is not None


@settings(max_examples=150, deadline=None)
@given(graphs(max_vertices=4, max_edges=6, labels="ab"), graphs(max_vertices=4, max_edges=6, labels="ab"))
def test_isomorphism_matches_brute_force(g, h):
    assert (labeled_isomorphic(g, h) is not None) == isomorphic_brute_force(g, h)


def test_random_graph_helper_is_irreducible():
    rng = random.Random(1)
    for _ in range(20):
        assert is_irreducible(random_graph(rng, 4, 7, irreducible=True))
