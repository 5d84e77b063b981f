from core.graph.graph import (
    INFINITE,
    Distance,
    ForestVerdict,
    Graph,
    GraphFormatError,
    GraphStructureError,
    all_pairs_distances,
    connected_components,
    distances_from,
    format_graph,
    is_forest,
    parse_graph,
    path_order,
    spanning_forest,
)
from core.graph.rooted_tree import RootedTree, root_tree
from core.graph.named import make_named, graph_from_spec, t_star_leg, T_STAR_X
from core.graph.enumeration import (
    contains_t_star_subtree,
    enumerate_connected_graphs,
    enumerate_labeled_trees,
    enumerate_unlabeled_graphs,
    random_labeled_tree,
)

__all__ = [
    "INFINITE",
    "Distance",
    "ForestVerdict",
    "Graph",
    "GraphFormatError",
    "GraphStructureError",
    "RootedTree",
    "T_STAR_X",
    "all_pairs_distances",
    "connected_components",
    "contains_t_star_subtree",
    "distances_from",
    "enumerate_connected_graphs",
    "enumerate_labeled_trees",
    "enumerate_unlabeled_graphs",
    "format_graph",
    "graph_from_spec",
    "is_forest",
    "make_named",
    "parse_graph",
    "path_order",
    "random_labeled_tree",
    "root_tree",
    "spanning_forest",
    "t_star_leg",
]
