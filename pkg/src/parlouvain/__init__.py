"""Shared-memory parallel Louvain community detection."""
from .errors import (
    GraphFormatError,
    GraphValidationError,
    UndefinedModularityError,
    UnsupportedFormatError,
)
from .graph_core import AdjacencyIndex, Graph, build_adjacency, weighted_degree
from .graph_io import (
    generate_ring_of_cliques,
    parse_edge_list,
    parse_matrix_market,
    write_dendrogram,
    write_edge_list,
    write_partition,
)
from .louvain import (
    Dendrogram,
    LouvainConfig,
    RunObserver,
    best_move,
    final_partition,
    induce_graph,
    merge_isolated,
    one_level,
    renumber,
    run,
)
from .modularity import (
    CommunityState,
    GainCandidate,
    gain,
    init_status,
    modularity,
    neighbor_community_weights,
)
from .timing import TimingReport, emit_timing

__version__ = "0.1.0"
