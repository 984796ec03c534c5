"""Local sparse spanning subgraphs of bounded-degree graphs.

The rank-Kruskal local algorithm, exact expansion tools, the sparse-cut
decomposition behind its sparsity bound, and the constructions and
transcript-replay harness behind the matching query lower bound.
"""

from .errors import (
    BudgetOverflowError,
    DomainError,
    EmbeddingFailed,
    ExhaustiveOnlyError,
    GraphFormatError,
    RefusalError,
    SparseSpanError,
    TheoreticalKOverflow,
)
from .graph import (
    INFINITE,
    Ball,
    EdgeKey,
    Graph,
    ball,
    bfs_distances,
    bridges,
    connected_components,
    diameter,
    edge_boundary,
    explore_ball,
    girth,
    is_connected,
    rank_less,
    tree_centroid,
)
from .expansion import Cut, ExpansionWitness, check_non_expanding, expansion, is_non_expanding
from .oracle import OracleHandle, Transcript, max_probes_per_edge
from .spanner import SpanResult, SpannerDecision, SpannerParams, compute_k, edge_in_spanner, span_all
from .reference import (
    BudgetFunctions,
    Decomposition,
    balanced_sparse_cut,
    beta_budget,
    decompose,
    kruskal_tree,
)
from .constructions import (
    BridgeArtifact,
    CloudMap,
    bridge_join,
    bridged_double,
    generate,
    replacement_product,
    subdivide,
)
from .adversary import (
    EmbeddingResult,
    QueryForest,
    apply_sigma,
    build_linked_tree,
    embed,
    record,
    replay_verify,
    run_pipeline,
)
from .ilg import format_ilg, parse_ilg, read_ilg, write_ilg

__all__ = [
    "Ball",
    "BridgeArtifact",
    "BudgetFunctions",
    "BudgetOverflowError",
    "CloudMap",
    "Cut",
    "Decomposition",
    "DomainError",
    "EdgeKey",
    "EmbeddingFailed",
    "EmbeddingResult",
    "ExhaustiveOnlyError",
    "ExpansionWitness",
    "Graph",
    "GraphFormatError",
    "INFINITE",
    "OracleHandle",
    "QueryForest",
    "RefusalError",
    "SpanResult",
    "SpannerDecision",
    "SpannerParams",
    "SparseSpanError",
    "TheoreticalKOverflow",
    "Transcript",
    "apply_sigma",
    "balanced_sparse_cut",
    "ball",
    "beta_budget",
    "bfs_distances",
    "bridge_join",
    "bridged_double",
    "bridges",
    "build_linked_tree",
    "check_non_expanding",
    "compute_k",
    "connected_components",
    "decompose",
    "diameter",
    "edge_boundary",
    "edge_in_spanner",
    "embed",
    "expansion",
    "explore_ball",
    "format_ilg",
    "generate",
    "girth",
    "is_connected",
    "is_non_expanding",
    "kruskal_tree",
    "max_probes_per_edge",
    "parse_ilg",
    "rank_less",
    "read_ilg",
    "record",
    "replacement_product",
    "replay_verify",
    "run_pipeline",
    "span_all",
    "subdivide",
    "tree_centroid",
    "write_ilg",
]

__version__ = "0.1.0"
