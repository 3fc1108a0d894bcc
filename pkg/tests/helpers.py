"""Shared generators for property tests."""

import random

from hypothesis import strategies as st

from soficdual import IntMatrix, LabeledGraph
from soficdual.graph import Edge

FIG1_ORDER = ("u", "w", "v", "x", "y")


def random_graph(rng, n_vertices, n_edges, labels="ab", irreducible=False):
    names = [f"q{i}" for i in range(n_vertices)]
    edges = []
    if irreducible:
        for i in range(n_vertices):
            edges.append(Edge(names[i], names[(i + 1) % n_vertices], rng.choice(labels)))
    while len(edges) < n_edges:
        edges.append(Edge(rng.choice(names), rng.choice(names), rng.choice(labels)))
    rng.shuffle(edges)
    return LabeledGraph(tuple(names), tuple(edges))


@st.composite
def graphs(draw, max_vertices=6, max_edges=15, labels="abc", irreducible=False):
    n = draw(st.integers(1, max_vertices))
    min_edges = n if irreducible else 0
    m = draw(st.integers(min_edges, max(min_edges, max_edges)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_graph(random.Random(seed), n, m, labels, irreducible)


@st.composite
def int_matrices(draw, max_dim=5, lo=-5, hi=5, square=False):
    r = draw(st.integers(1, max_dim))
    c = r if square else draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c))
    return IntMatrix(r, c, tuple(entries))


@st.composite
def irreducible_nonneg_matrices(draw, max_dim=5, hi=3):
    n = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(0, hi), min_size=n * n, max_size=n * n))
    rows = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
    # a cyclic permutation on top guarantees strong connectivity
    for i in range(n):
        rows[i][(i + 1) % n] = max(rows[i][(i + 1) % n], 1)
    return IntMatrix.from_rows(rows)
