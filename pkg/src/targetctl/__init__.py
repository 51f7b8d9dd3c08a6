"""Strong targeted controllability of leader-follower networks."""

from .controllability import (
    Policy,
    Realization,
    Status,
    Verdict,
    check_necessary,
    check_sufficient,
    combined_verdict,
    falsify_strong_tc,
    is_distance_preserving,
    output_ctrb_rank,
    sample_qd,
)
from .forcing import BipartiteGraph, ForcingState, bipartite_forces_all, derived_set, is_zero_forcing_set
from .graph import INFINITE, DiGraph, GraphError, distance, selection_matrix, set_distance, vertex_set
from .io import export_dot, load_fixture, load_graph, to_json
from .leaders import RootSet, build_cover, min_root_set, select_leaders
from .partition import DistancePartition, build_layer_graph, partition_targets

__all__ = [
    "INFINITE",
    "BipartiteGraph",
    "DiGraph",
    "DistancePartition",
    "ForcingState",
    "GraphError",
    "Policy",
    "Realization",
    "RootSet",
    "Status",
    "Verdict",
    "bipartite_forces_all",
    "build_cover",
    "build_layer_graph",
    "check_necessary",
    "check_sufficient",
    "combined_verdict",
    "derived_set",
    "distance",
    "export_dot",
    "falsify_strong_tc",
    "is_distance_preserving",
    "is_zero_forcing_set",
    "load_fixture",
    "load_graph",
    "min_root_set",
    "output_ctrb_rank",
    "partition_targets",
    "sample_qd",
    "select_leaders",
    "selection_matrix",
    "set_distance",
    "to_json",
]
