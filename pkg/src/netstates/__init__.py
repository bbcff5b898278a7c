"""Detect recurrent system states in temporal networks.

The pipeline slices timestamped contact events into snapshot graphs, scores
every snapshot pair with a graph distance measure, clusters the snapshots by
single linkage, and selects the number of states with the Dunn index.
"""

from .clustering import (
    Dendrogram,
    StateSequence,
    cut_to_k,
    dendrogram_to_json,
    dendrogram_to_newick,
    dunn_index,
    select_num_states,
    single_linkage,
)
from .distances import (
    DistanceMatrix,
    Measure,
    deltacon_affinity,
    deltacon_distance,
    density_matrix,
    edit_distance,
    graph_distance,
    jsd_distance,
    pairwise_distance_matrix,
    read_distance_csv,
    spectrum_distance,
    to_similarity,
    von_neumann_entropy,
    write_distance_csv,
)
from .events import (
    Event,
    EventLog,
    ParseError,
    SnapshotSequence,
    event_rate_series,
    parse_event_log,
    windowize,
    write_event_log,
)
from .experiments import ComparisonStats, ExperimentReport, run_model_comparison
from .figures import render_heatmap, render_timeline
from .generators import (
    GeneratorConfig,
    SbmRegime,
    barabasi_albert_graph,
    lfr_graph,
    planted_state_sequence,
    realized_mixing,
    regular_random_graph,
    sbm_graph,
)
from .graphs import (
    Graph,
    adjacency,
    graph_from_json,
    graph_intersection,
    graph_to_json,
    laplacian,
    read_edge_list,
    write_edge_list,
)
from .linalg import EigenDecomposition, matrix_exp_neg, solve_linear_symmetric, sym_eigen
from .pipeline import PipelineConfig, PipelineResult, run_pipeline
from .synthdata import snapshot_sequence_to_event_log, synthetic_school_log

__version__ = "0.1.0"

__all__ = [
    "ComparisonStats",
    "Dendrogram",
    "DistanceMatrix",
    "EigenDecomposition",
    "Event",
    "EventLog",
    "ExperimentReport",
    "GeneratorConfig",
    "Graph",
    "Measure",
    "ParseError",
    "PipelineConfig",
    "PipelineResult",
    "SbmRegime",
    "SnapshotSequence",
    "StateSequence",
    "adjacency",
    "barabasi_albert_graph",
    "cut_to_k",
    "deltacon_affinity",
    "deltacon_distance",
    "dendrogram_to_json",
    "dendrogram_to_newick",
    "density_matrix",
    "dunn_index",
    "edit_distance",
    "event_rate_series",
    "graph_distance",
    "graph_from_json",
    "graph_intersection",
    "graph_to_json",
    "jsd_distance",
    "laplacian",
    "lfr_graph",
    "matrix_exp_neg",
    "pairwise_distance_matrix",
    "parse_event_log",
    "planted_state_sequence",
    "read_distance_csv",
    "read_edge_list",
    "realized_mixing",
    "regular_random_graph",
    "render_heatmap",
    "render_timeline",
    "run_model_comparison",
    "run_pipeline",
    "sbm_graph",
    "select_num_states",
    "single_linkage",
    "snapshot_sequence_to_event_log",
    "solve_linear_symmetric",
    "spectrum_distance",
    "sym_eigen",
    "synthetic_school_log",
    "to_similarity",
    "von_neumann_entropy",
    "windowize",
    "write_distance_csv",
    "write_edge_list",
    "write_event_log",
]
