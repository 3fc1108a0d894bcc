"""Algorithms on labeled-graph presentations of sofic shifts.

The central construction is the Fischer cover of an irreducible sofic
shift: subset construction from the full vertex set, restriction to the
unique terminal component of the subset automaton, then merging of states
with equal follower sets.  The left cover is the same thing done on the
reversed graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .graph import (
    Edge,
    LabeledGraph,
    NotIrreducibleError,
    labeled_isomorphic,
    require_irreducible,
    reverse_graph,
    strongly_connected_components,
)
from .intlinalg import IntMatrix, MatrixError, mat_pow

Word = tuple[str, ...]
State = frozenset[str]

DEFAULT_MAX_PERIOD = 12


def is_right_resolving(g: LabeledGraph) -> bool:
    seen = set()
    for e in g.edges:
        key = (e.source, e.label)
        if key in seen:
            return False
        seen.add(key)
    return True


def is_left_resolving(g: LabeledGraph) -> bool:
    return is_right_resolving(reverse_graph(g))


def image(g: LabeledGraph, subset: State, label: str) -> State:
    """Targets of ``label``-edges leaving ``subset``."""
    return frozenset(e.target for e in g.edges if e.label == label and e.source in subset)


def word_image(g: LabeledGraph, subset: State, word: Sequence[str]) -> State:
    for a in word:
        subset = image(g, subset, a)
        if not subset:
            break
    return subset


def is_word(g: LabeledGraph, word: Sequence[str]) -> bool:
    """Whether ``word`` labels some path in ``g``."""
    return bool(word_image(g, frozenset(g.vertices), word))


@dataclass(frozen=True)
class SubsetAutomaton:
    states: tuple[State, ...]
    transitions: Mapping[tuple[State, str], State]
    base: LabeledGraph

    def to_graph(self) -> LabeledGraph:
        """Render as a labeled graph whose vertex names are the sorted subsets joined by ``+``."""
        names = {s: state_name(s) for s in self.states}
        if len(set(names.values())) != len(names):
            raise RuntimeError("subset state names collide; vertex names are too exotic")
        vertices = tuple(sorted(names.values()))
        edges = tuple(
            sorted(Edge(names[s], names[t], a) for (s, a), t in self.transitions.items())
        )
        return LabeledGraph(vertices, edges)


def state_name(s: State) -> str:
    # members that already contain "+" (covers of covers) are bracketed so names stay distinct
    return "+".join(f"({v})" if "+" in v else v for v in sorted(s))


def determinize(g: LabeledGraph) -> SubsetAutomaton:
    """Subset construction seeded at the full vertex set.

    The states are the nonempty images of the full set under nonempty
    words; the full set itself is a state only if some word maps onto it.
    """
    if not g.edges:
        raise ValueError("cannot determinize a graph without edges")
    alphabet = g.alphabet
    full = frozenset(g.vertices)
    states: list[State] = []
    seen: set[State] = set()
    transitions: dict[tuple[State, str], State] = {}
    queue: deque[State] = deque()

    def visit(s: State) -> None:
        if s not in seen:
            seen.add(s)
            states.append(s)
            queue.append(s)

    for a in alphabet:
        t = image(g, full, a)
        if t:
            visit(t)
    while queue:
        s = queue.popleft()
        for a in alphabet:
            t = image(g, s, a)
            if t:
                transitions[(s, a)] = t
                visit(t)
    return SubsetAutomaton(tuple(states), transitions, g)


def terminal_component(sa: SubsetAutomaton) -> SubsetAutomaton:
    """Restrict to the terminal strongly connected component.

    For an irreducible base graph the terminal component is unique: it
    consists of the subsets of least size reachable from every state.
    """
    require_irreducible(sa.base, "terminal_component")
    names = {s: state_name(s) for s in sa.states}
    by_name = {v: k for k, v in names.items()}
    as_graph = sa.to_graph()
    sccs = strongly_connected_components(as_graph)
    succ = as_graph.successors()
    terminal = [b for b in sccs.blocks if all(w in b for v in b for w in succ[v])]
    if len(terminal) != 1:
        raise RuntimeError(f"expected one terminal component, found {len(terminal)}")
    keep = {by_name[v] for v in terminal[0]}
    return SubsetAutomaton(
        tuple(s for s in sa.states if s in keep),
        {k: t for k, t in sa.transitions.items() if k[0] in keep},
        sa.base,
    )


def follower_partition(g: LabeledGraph) -> list[list[str]]:
    """Coarsest partition of a right-resolving graph into follower-equivalent classes.

    Moore-style refinement: start from a single block and split by the
    (label, target block) out-profile until nothing changes.
    """
    if not is_right_resolving(g):
        raise ValueError("follower-set refinement needs a right-resolving graph")
    out = {v: {e.label: e.target for e in g.out_edges(v)} for v in g.vertices}
    block = {v: 0 for v in g.vertices}
    while True:
        signatures = {
            v: tuple(sorted((a, block[t]) for a, t in out[v].items())) for v in g.vertices
        }
        keys: dict[tuple, int] = {}
        new_block = {}
        for v in g.vertices:
            new_block[v] = keys.setdefault((block[v], signatures[v]), len(keys))
        if len(keys) == len(set(block.values())):
            break
        block = new_block
    classes: dict[int, list[str]] = {}
    for v in g.vertices:
        classes.setdefault(block[v], []).append(v)
    return list(classes.values())


def merge_follower_equivalent(g: LabeledGraph) -> LabeledGraph:
    """Quotient of a right-resolving graph by follower equivalence.

    Each class is named after its least member, and only that member's
    out-edges are kept (the others carry the same profile).
    """
    classes = follower_partition(g)
    rep = {}
    for cls in classes:
        name = min(cls)
        for v in cls:
            rep[v] = name
    vertices = tuple(v for v in g.vertices if rep[v] == v)
    edges = tuple(Edge(v, rep[e.target], e.label) for v in vertices for e in g.out_edges(v))
    return LabeledGraph(vertices, edges)


def right_fischer_cover(g: LabeledGraph) -> LabeledGraph:
    """Minimal right-resolving presentation of the shift presented by ``g``."""
    require_irreducible(g, "right_fischer_cover")
    core = terminal_component(determinize(g)).to_graph()
    return merge_follower_equivalent(core)


def left_fischer_cover(g: LabeledGraph) -> LabeledGraph:
    require_irreducible(g, "left_fischer_cover")
    return reverse_graph(right_fischer_cover(reverse_graph(g)))


def find_synchronizing_word(g: LabeledGraph) -> Word | None:
    """Shortest word whose image of the full vertex set is a single vertex.

    Breadth-first over subset states with labels tried in sorted order, so
    among the shortest words the lexicographically least one wins.
    """
    full = frozenset(g.vertices)
    if len(full) == 1:
        return ()
    alphabet = g.alphabet
    parent: dict[State, tuple[State, str] | None] = {full: None}
    queue = deque([full])
    while queue:
        s = queue.popleft()
        for a in alphabet:
            t = image(g, s, a)
            if not t or t in parent:
                continue
            parent[t] = (s, a)
            if len(t) == 1:
                word = []
                cur = t
                while parent[cur] is not None:
                    prev, label = parent[cur]
                    word.append(label)
                    cur = prev
                return tuple(reversed(word))
            queue.append(t)
    return None


def _can_reach_cycle(succ: Mapping[tuple[str, str], set[tuple[str, str]]], starts) -> bool:
    # DFS colouring on the part of the graph reachable from starts
    color: dict = {}
    for start in starts:
        if start in color:
            continue
        color[start] = 1
        stack = [(start, iter(succ.get(start, ())))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color.get(nxt) == 1:
                return True
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(succ.get(nxt, ()))))
    return False


def is_right_closing(g: LabeledGraph) -> bool:
    """No two distinct right-infinite paths with one label sequence leave a common vertex.

    Pair-graph test: from every splitting (two distinct edges out of one
    vertex with a common label) follow pairs of equally labeled edges; the
    graph fails to be right-closing exactly when such a pair walk can run
    forever, i.e. reaches a cycle of the pair graph.  Pairs that merge onto
    the diagonal still count, since the two paths already differ in their
    first edge.
    """
    by_source: dict[str, list[Edge]] = {v: [] for v in g.vertices}
    for e in g.edges:
        by_source[e.source].append(e)

    starts = set()
    for v, es in by_source.items():
        for i, e1 in enumerate(es):
            for e2 in es[i + 1:]:
                if e1.label == e2.label:
                    starts.add((e1.target, e2.target))
    if not starts:
        return True

    succ: dict[tuple[str, str], set[tuple[str, str]]] = {}
    for p, q in product(g.vertices, repeat=2):
        succ[(p, q)] = {
            (e1.target, e2.target) for e1 in by_source[p] for e2 in by_source[q] if e1.label == e2.label
        }
    return not _can_reach_cycle(succ, sorted(starts))


def is_left_closing(g: LabeledGraph) -> bool:
    return is_right_closing(reverse_graph(g))


def is_almost_finite_type(g: LabeledGraph) -> bool:
    """AFT test via the cover criterion: the right Fischer cover is left-closing."""
    require_irreducible(g, "is_almost_finite_type")
    return is_left_closing(right_fischer_cover(g))


def _word_relation(g: LabeledGraph):
    # per label: vertex index -> bitmask of targets
    index = {v: i for i, v in enumerate(g.vertices)}
    rel: dict[str, list[int]] = {a: [0] * g.num_vertices for a in g.alphabet}
    for e in g.edges:
        rel[e.label][index[e.source]] |= 1 << index[e.target]
    return rel


def _compose(r: Sequence[int], s: Sequence[int]) -> list[int]:
    out = []
    for mask in r:
        acc = 0
        j = 0
        while mask:
            if mask & 1:
                acc |= s[j]
            mask >>= 1
            j += 1
        out.append(acc)
    return out


def _has_cycle(rel: Sequence[int]) -> bool:
    # v ->(w^j) v for some 1 <= j <= n; pigeonhole on block boundaries
    # caps the exponent at the number of vertices
    n = len(rel)
    for v in range(n):
        frontier = rel[v]
        seen = frontier
        for _ in range(n):
            if frontier >> v & 1:
                return True
            nxt = 0
            j = 0
            m = frontier
            while m:
                if m & 1:
                    nxt |= rel[j]
                m >>= 1
                j += 1
            frontier = nxt & ~seen
            seen |= nxt
            if not frontier:
                break
    return False


def count_periodic_points(g: LabeledGraph, n: int, *, max_n: int = DEFAULT_MAX_PERIOD) -> int:
    """Number of words w of length n whose periodic point w^inf lies in the shift.

    These are the points fixed by the n-th power of the shift map (points,
    not orbits).  Words are enumerated depth first, and prefixes that are
    not words of the shift are pruned.
    """
    require_irreducible(g, "count_periodic_points")
    if n < 1:
        raise ValueError("period must be positive")
    if n > max_n:
        raise ValueError(f"period {n} exceeds the enumeration bound {max_n}")
    rel = _word_relation(g)
    alphabet = g.alphabet
    ident = [1 << i for i in range(g.num_vertices)]

    count = 0
    stack = [(ident, 0)]
    while stack:
        r, depth = stack.pop()
        if depth == n:
            count += _has_cycle(r)
            continue
        for a in alphabet:
            nr = _compose(r, rel[a])
            if any(nr):
                stack.append((nr, depth + 1))
    return count


def sft_periodic_count(m: IntMatrix, n: int) -> int:
    """trace(m^n): periodic points of period n in the edge shift of m."""
    if not m.is_square:
        raise MatrixError("sft_periodic_count needs a square matrix")
    if not m.is_nonnegative():
        raise MatrixError("sft_periodic_count needs nonnegative entries")
    if n < 1:
        raise ValueError("period must be positive")
    p = mat_pow(m, n)
    return sum(p[i, i] for i in range(m.rows))


def same_shift(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Equality of the presented shifts, via isomorphism of right Fischer covers."""
    for g in (g1, g2):
        if not g.edges or len(strongly_connected_components(g)) != 1:
            raise NotIrreducibleError("same_shift needs irreducible graphs")
    return labeled_isomorphic(right_fischer_cover(g1), right_fischer_cover(g2)) is not None
