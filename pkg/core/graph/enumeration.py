# core/graph/enumeration.py
from __future__ import annotations

import itertools
import random
from typing import Iterator, List, Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from core.graph.graph import Graph, GraphStructureError, is_forest
from core.graph.named import make_named

DEFAULT_ENUMERATION_CAP = 8


def _tree_from_prufer(n: int, sequence: Sequence[int]) -> Graph:
    tree = nx.from_prufer_sequence(list(sequence))
    return Graph.from_edges(n, tree.edges())


def enumerate_labeled_trees(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Graph]:
    """
    Every labeled tree on {0..n-1}, one per Prüfer sequence, in lexicographic
    sequence order. n^(n-2) trees for n >= 2, a single tree for n in {1, 2}.
    """
    if n < 1:
        raise GraphStructureError("Tree enumeration needs n >= 1.", details=n)
    if n > cap:
        raise GraphStructureError(f"n={n} exceeds the enumeration cap {cap}.", details=n)

    if n == 1:
        yield Graph.from_edges(1, [])
        return
    if n == 2:
        yield Graph.from_edges(2, [(0, 1)])
        return

    for seq in itertools.product(range(n), repeat=n - 2):
        yield _tree_from_prufer(n, seq)


def random_labeled_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labeled tree through a uniform random Prüfer sequence."""
    if n < 1:
        raise GraphStructureError("Tree needs n >= 1.", details=n)
    if n <= 2:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [])
    return _tree_from_prufer(n, [rng.randrange(n) for _ in range(n - 2)])


def enumerate_connected_graphs(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Graph]:
    """Every connected labeled simple graph on {0..n-1}, by edge subsets of K_n."""
    if n < 1:
        raise GraphStructureError("Graph enumeration needs n >= 1.", details=n)
    if n > cap:
        raise GraphStructureError(f"n={n} exceeds the enumeration cap {cap}.", details=n)

    all_edges: List[tuple] = list(itertools.combinations(range(n), 2))
    if n == 1:
        yield Graph.from_edges(1, [])
        return

    for m in range(n - 1, len(all_edges) + 1):
        for subset in itertools.combinations(all_edges, m):
            g = Graph.from_edges(n, subset)
            if nx.is_connected(g.nx_graph):
                yield g


def contains_t_star_subtree(g: Graph) -> bool:
    """True iff T* is isomorphic to a (not necessarily induced) subgraph of g."""
    verdict = is_forest(g)
    if not verdict:
        raise GraphStructureError("T* containment is only decided for forests.", details=verdict.cycle)

    if g.vertex_count < 10:
        return False

    # In a forest every subgraph copy of a tree is also induced, so
    # monomorphism and induced isomorphism agree here.
    matcher = isomorphism.GraphMatcher(g.nx_graph, make_named("t_star").nx_graph)
    return matcher.subgraph_is_monomorphic()


def enumerate_unlabeled_graphs(n_max: int) -> Iterator[Graph]:
    """One graph per isomorphism class on 1..n_max vertices, connected or not (n_max <= 7)."""
    if n_max > 7:
        raise GraphStructureError("The graph atlas only covers up to 7 vertices.", details=n_max)

    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if 1 <= n <= n_max:
            yield Graph.from_edges(n, atlas_graph.edges())
