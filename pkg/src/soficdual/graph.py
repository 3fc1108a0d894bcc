"""Finite labeled directed multigraphs.

A :class:`LabeledGraph` is the presentation object used everywhere in the
package: a list of vertex names and a list of ``(source, target, label)``
edges.  Parallel edges are allowed and counted with multiplicity.

Text format (one item per line)::

    # comment
    vertex u
    edge u w e

Names and labels are arbitrary non-whitespace strings, so primed labels
such as ``a'`` survive a round trip.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .intlinalg import IntMatrix, entrywise_positive_power


class GraphError(ValueError):
    """Invalid graph data or a graph file that does not parse."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class NotIrreducibleError(ValueError):
    """An operation that needs an irreducible (strongly connected) graph got something else."""


class Edge(NamedTuple):
    source: str
    target: str
    label: str


@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(Edge(*e) for e in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for v in vertices:
            _check_token(v, "vertex name")
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        for e in edges:
            for v in (e.source, e.target):
                if v not in seen:
                    raise GraphError(f"edge {e} references undeclared vertex {v!r}")
            _check_token(e.label, "label")

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted({e.label for e in self.edges}))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def out_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.source == v]

    def in_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.target == v]

    def successors(self) -> dict[str, list[str]]:
        succ: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            succ[e.source].append(e.target)
        return succ

    def edge_multiset(self) -> Counter:
        return Counter(self.edges)

    def relabel_vertices(self, mapping: dict[str, str]) -> LabeledGraph:
        return LabeledGraph(
            tuple(mapping[v] for v in self.vertices),
            tuple(Edge(mapping[e.source], mapping[e.target], e.label) for e in self.edges),
        )

    def __str__(self) -> str:
        return format_graph(self)


def _check_token(tok: str, what: str) -> None:
    if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
        raise GraphError(f"{what} must be a nonempty string without whitespace, got {tok!r}")


@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[frozenset[str], ...]

    def block_of(self, v: str) -> frozenset[str]:
        for b in self.blocks:
            if v in b:
                return b
        raise KeyError(v)

    def __len__(self) -> int:
        return len(self.blocks)


def parse_graph(text: str) -> LabeledGraph:
    vertices: list[str] = []
    declared: set[str] = set()
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) != 2:
                raise GraphError("expected 'vertex <name>'", lineno)
            if tokens[1] in declared:
                raise GraphError(f"duplicate vertex declaration {tokens[1]!r}", lineno)
            vertices.append(tokens[1])
            declared.add(tokens[1])
        elif kind == "edge":
            if len(tokens) != 4:
                raise GraphError("expected 'edge <src> <dst> <label>'", lineno)
            _, src, dst, label = tokens
            for v in (src, dst):
                if v not in declared:
                    raise GraphError(f"edge references undeclared vertex {v!r}", lineno)
            edges.append(Edge(src, dst, label))
        else:
            raise GraphError(f"unknown directive {kind!r}", lineno)
    return LabeledGraph(tuple(vertices), tuple(edges))


def format_graph(g: LabeledGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.source} {e.target} {e.label}" for e in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def adjacency_matrix(g: LabeledGraph, order: Sequence[str] | None = None) -> IntMatrix:
    """Edge counts between vertices, labels forgotten.

    ``order`` fixes the row/column order and must be a permutation of the
    vertex set; it defaults to declaration order.
    """
    order = tuple(g.vertices if order is None else order)
    if sorted(order) != sorted(g.vertices):
        raise GraphError(f"order {order} is not a permutation of the vertices {g.vertices}")
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    counts = [[0] * n for _ in range(n)]
    for e in g.edges:
        counts[index[e.source]][index[e.target]] += 1
    return IntMatrix.from_rows(counts)


def reverse_graph(g: LabeledGraph) -> LabeledGraph:
    return LabeledGraph(g.vertices, tuple(Edge(e.target, e.source, e.label) for e in g.edges))


def strongly_connected_components(g: LabeledGraph) -> VertexPartition:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit.

    Blocks come out in reverse topological order of the condensation (sink
    components first).
    """
    succ = g.successors()
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    blocks: list[frozenset[str]] = []
    counter = 0

    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                block = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    block.add(w)
                    if w == v:
                        break
                blocks.append(frozenset(block))
    return VertexPartition(tuple(blocks))


def is_irreducible(g: LabeledGraph) -> bool:
    return bool(g.edges) and len(strongly_connected_components(g)) == 1


def require_irreducible(g: LabeledGraph, what: str = "this operation") -> None:
    if not is_irreducible(g):
        raise NotIrreducibleError(f"{what} needs an irreducible graph with at least one edge")


def graph_period(g: LabeledGraph) -> int:
    """gcd of cycle lengths, from BFS levels: gcd over edges s->t of level(s) + 1 - level(t)."""
    require_irreducible(g, "graph_period")
    base = g.vertices[0]
    level = {base: 0}
    succ = g.successors()
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
    period = 0
    for e in g.edges:
        period = gcd(period, level[e.source] + 1 - level[e.target])
    return abs(period)


def wielandt_bound(n: int) -> int:
    return (n - 1) ** 2 + 1


def is_mixing(g: LabeledGraph) -> bool:
    """Irreducible with period one.

    Cross-checked against the power test: a primitive n x n matrix has an
    entrywise positive power with exponent at most (n-1)^2 + 1.
    """
    by_period = is_irreducible(g) and graph_period(g) == 1
    if g.edges:
        k = entrywise_positive_power(adjacency_matrix(g), wielandt_bound(g.num_vertices))
    else:
        k = None
    by_power = k is not None
    if by_period != by_power:
        raise RuntimeError(f"period test ({by_period}) and power test ({by_power}) disagree for {g}")
    return by_period


def _profile(g: LabeledGraph) -> dict[str, tuple]:
    outs = {v: Counter() for v in g.vertices}
    ins = {v: Counter() for v in g.vertices}
    loops = {v: Counter() for v in g.vertices}
    for e in g.edges:
        outs[e.source][e.label] += 1
        ins[e.target][e.label] += 1
        if e.source == e.target:
            loops[e.source][e.label] += 1
    return {
        v: (tuple(sorted(outs[v].items())), tuple(sorted(ins[v].items())), tuple(sorted(loops[v].items())))
        for v in g.vertices
    }


def labeled_isomorphic(g1: LabeledGraph, g2: LabeledGraph) -> dict[str, str] | None:
    """A vertex bijection carrying g1's labeled edge multiset onto g2's, or None.

    Plain backtracking with per-vertex label profiles as a filter; fine for
    the dozen-vertex graphs this package deals with.
    """
    if g1.num_vertices != g2.num_vertices or len(g1.edges) != len(g2.edges):
        return None
    if Counter(e.label for e in g1.edges) != Counter(e.label for e in g2.edges):
        return None
    p1, p2 = _profile(g1), _profile(g2)
    if sorted(p1.values()) != sorted(p2.values()):
        return None

    m1 = g1.edge_multiset()
    m2 = g2.edge_multiset()
    # pair counts keyed by (source, target) -> Counter(label)
    between1: dict[tuple[str, str], Counter] = {}
    for e, c in m1.items():
        between1.setdefault((e.source, e.target), Counter())[e.label] += c
    between2: dict[tuple[str, str], Counter] = {}
    for e, c in m2.items():
        between2.setdefault((e.source, e.target), Counter())[e.label] += c
    empty = Counter()

    order = sorted(g1.vertices, key=lambda v: sum(1 for w in g1.vertices if p1[w] == p1[v]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        if between1.get((v, v), empty) != between2.get((w, w), empty):
            return False
        for v2, w2 in mapping.items():
            if between1.get((v, v2), empty) != between2.get((w, w2), empty):
                return False
            if between1.get((v2, v), empty) != between2.get((w2, w), empty):
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in g2.vertices:
            if w in used or p1[v] != p2[w] or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if not search(0):
        return None
    assert g1.relabel_vertices(mapping).edge_multiset() == m2
    return dict(mapping)


def from_matrix(m: IntMatrix, prefix: str = "s") -> LabeledGraph:
    """Edge shift of a nonnegative square matrix: every edge gets its own label."""
    if not m.is_square or not m.is_nonnegative():
        raise GraphError("edge shift needs a square nonnegative matrix")
    names = tuple(f"{prefix}{i}" for i in range(m.rows))
    edges = []
    for i in range(m.rows):
        for j in range(m.cols):
            for k in range(m[i, j]):
                edges.append(Edge(names[i], names[j], f"e{i}_{j}_{k}"))
    return LabeledGraph(names, tuple(edges))


def subgraph(g: LabeledGraph, keep: Iterable[str]) -> LabeledGraph:
    keep = set(keep)
    return LabeledGraph(
        tuple(v for v in g.vertices if v in keep),
        tuple(e for e in g.edges if e.source in keep and e.target in keep),
    )
