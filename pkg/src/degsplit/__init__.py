"""Degree splitting, hypergraph sinkless orientation and edge coloring."""

from .applications import EdgeColoring, EdgePartition, base_edge_coloring, edge_coloring, multiway_split
from .directed import (ChoppedSplitGraph, balanced_orientation_s, chop, directed_split,
                       euler_sink_sourceless, orient_components, refine_odd, run_directed)
from .generators import gen_random_regular, gen_shannon
from .graph import INF, Graph, bfs_distances, connected_components, load_graph, weak_diameter
from .hso import HsoAssignment, HsoInstance, build_hso_instance, check_rank_degree, solve_hso, validate_hso
from .mending import (LayeredInstance, bias, brute_force_mend, build_lower_bound_instance,
                      check_bias_certificate, validate_partial)
from .split import (BucketSet, Color, Component, Direction, SplitGraph, VirtualNode, build_split_graph,
                    color_discrepancy, components_paths_cycles, discrepancy, lift_orientation,
                    make_buckets, true_length)
from .undirected import increase_girth, merge_cycle_path, merge_cycles, run_undirected, undirected_split
from .voting import VotingBlock, block_intersection_graph, local_voting_block, ruling_set, select_disjoint_blocks

__all__ = [
    "balanced_orientation_s",
    "base_edge_coloring",
    "bfs_distances",
    "bias",
    "block_intersection_graph",
    "brute_force_mend",
    "BucketSet",
    "build_hso_instance",
    "build_lower_bound_instance",
    "build_split_graph",
    "check_bias_certificate",
    "check_rank_degree",
    "chop",
    "ChoppedSplitGraph",
    "Color",
    "color_discrepancy",
    "Component",
    "components_paths_cycles",
    "connected_components",
    "directed_split",
    "Direction",
    "discrepancy",
    "edge_coloring",
    "EdgeColoring",
    "EdgePartition",
    "euler_sink_sourceless",
    "gen_random_regular",
    "gen_shannon",
    "Graph",
    "HsoAssignment",
    "HsoInstance",
    "increase_girth",
    "INF",
    "LayeredInstance",
    "lift_orientation",
    "load_graph",
    "local_voting_block",
    "make_buckets",
    "merge_cycle_path",
    "merge_cycles",
    "multiway_split",
    "orient_components",
    "refine_odd",
    "ruling_set",
    "run_directed",
    "run_undirected",
    "select_disjoint_blocks",
    "solve_hso",
    "SplitGraph",
    "true_length",
    "undirected_split",
    "validate_hso",
    "validate_partial",
    "VirtualNode",
    "VotingBlock",
    "weak_diameter",
]

__version__ = "0.1.0"
