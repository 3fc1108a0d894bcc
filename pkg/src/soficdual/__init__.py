"""Fischer covers of sofic shifts and the K-theory of their Ruelle algebras."""

from pathlib import Path

from .graph import (
    Edge,
    GraphError,
    LabeledGraph,
    NotIrreducibleError,
    VertexPartition,
    adjacency_matrix,
    format_graph,
    graph_period,
    is_irreducible,
    is_mixing,
    labeled_isomorphic,
    parse_graph,
    reverse_graph,
    strongly_connected_components,
)
from .intlinalg import (
    FGAbelianGroup,
    IntMatrix,
    MatrixError,
    SmithDecomposition,
    cokernel,
    determinant,
    kernel_rank,
    mat_mul,
    mat_pow,
    parse_matrix,
    rank_exact,
    smith_normal_form,
)
from .ktheory import (
    Convention,
    DualityReport,
    KTheoryPair,
    PrintedReference,
    Side,
    duality_check,
    duality_report,
    heteroclinic_rank,
    ruelle_ktheory,
    stable_ktheory,
    unstable_ktheory,
)
from .presentations import (
    SubsetAutomaton,
    count_periodic_points,
    determinize,
    find_synchronizing_word,
    is_almost_finite_type,
    is_left_closing,
    is_left_resolving,
    is_right_closing,
    is_right_resolving,
    left_fischer_cover,
    merge_follower_equivalent,
    right_fischer_cover,
    same_shift,
    sft_periodic_count,
    terminal_component,
)

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture_graph(name: str) -> LabeledGraph:
    return parse_graph((FIXTURES / name).read_text(encoding="utf-8"))


def load_fixture_matrix(name: str) -> IntMatrix:
    return parse_matrix((FIXTURES / name).read_text(encoding="utf-8"))
