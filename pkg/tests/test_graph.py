# tests/test_graph.py
from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from core.graph.enumeration import (
    contains_t_star_subtree,
    enumerate_connected_graphs,
    enumerate_labeled_trees,
    enumerate_unlabeled_graphs,
    random_labeled_tree,
)
from core.graph.graph import (
    INFINITE,
    Graph,
    GraphFormatError,
    GraphStructureError,
    connected_components,
    degree_sequence,
    distances_from,
    format_graph,
    is_forest,
    parse_graph,
    path_order,
    spanning_forest,
)
from core.graph.named import graph_from_spec, make_named, t_star_leg
from core.graph.rooted_tree import root_tree
from tests.conftest import k2


# ----------------------------
# parse / format
# ----------------------------

def test_parse_k2():
    g = parse_graph("2 1\n0 1\n")
    assert g.vertex_count == 2
    assert g.edges() == [(0, 1)]
    assert g.neighbors(0) == (1,)


def test_parse_single_vertex():
    g = parse_graph("1 0\n")
    assert g.vertex_count == 1
    assert g.edge_count == 0


def test_parse_skips_comments_and_blank_lines():
    g = parse_graph("# a path\n\n3 2\n0 1\n# middle\n1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


def test_parse_t_star_file_matches_builder():
    text = "10 9\n" + "\n".join(f"{u} {v}" for u, v in make_named("t_star").edges()) + "\n"
    assert parse_graph(text).canonical_edges() == make_named("t_star").canonical_edges()


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "header"),
        ("2 1\n0 0\n", "Self-loop"),
        ("2 1\n0 2\n", "out of range"),
        ("3 2\n0 1\n", "announces 2 edges"),
        ("2 1\n0 x\n", "decimal"),
        ("2 2\n0 1\n1 0\n", "Duplicate"),
    ],
)
def test_parse_rejects_bad_input(text, fragment):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert fragment in str(exc.value)


def test_parse_error_carries_line_number():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph("3 2\n0 1\n1 1\n")
    assert exc.value.line_number == 3
    assert str(exc.value).startswith("line 3:")


def test_format_graph_is_read_back_unchanged():
    g = make_named("spider", 2)
    assert parse_graph(format_graph(g)) == g


def test_adjacency_is_symmetric_and_sorted():
    g = Graph.from_edges(5, [(4, 0), (2, 0), (3, 1), (1, 0)])
    for v in g.vertices:
        assert list(g.neighbors(v)) == sorted(g.neighbors(v))
        for u in g.neighbors(v):
            assert v in g.neighbors(u)


def test_to_networkx_returns_an_independent_copy():
    g = make_named("cycle", 4)
    h = g.to_networkx()
    assert sorted(h.nodes) == [0, 1, 2, 3]
    assert h.number_of_edges() == 4
    h.add_edge(0, 2)
    assert not g.is_adjacent(0, 2)
    assert g.nx_graph.number_of_edges() == 4


# ----------------------------
# structure queries
# ----------------------------

def test_is_forest_on_path():
    verdict = is_forest(make_named("path", 4))
    assert verdict
    assert verdict.cycle is None


def test_is_forest_cycle_witness():
    verdict = is_forest(make_named("cycle", 3))
    assert not verdict
    assert verdict.cycle[0] == verdict.cycle[-1]
    assert len(set(verdict.cycle)) == 3


def test_t_star_is_a_forest():
    assert is_forest(make_named("t_star"))


def test_distances_on_path():
    assert distances_from(make_named("path", 3), 0) == [0, 1, 2]


def test_distances_on_t_star():
    dist = distances_from(make_named("t_star"), 0)
    assert dist[0] == 0
    for j in (1, 2, 3):
        w, v, u = t_star_leg(j)
        assert (dist[w], dist[v], dist[u]) == (1, 2, 3)


def test_distances_across_components_are_infinite():
    g = Graph.from_edges(3, [(0, 1)])
    assert distances_from(g, 2) == [INFINITE, INFINITE, 0]


def test_distances_reject_bad_source():
    with pytest.raises(GraphStructureError):
        distances_from(k2(), 5)


def _floyd_warshall(g: Graph):
    n = g.vertex_count
    d = [[0 if u == v else INFINITE for v in range(n)] for u in range(n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def _random_graph(n: int, rng: random.Random) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph.from_edges(n, [p for p in pairs if rng.random() < 0.3])


def test_distances_match_naive_all_pairs_on_small_graphs():
    rng = random.Random(17)
    graphs = list(enumerate_unlabeled_graphs(7))
    graphs += [_random_graph(8, rng) for _ in range(40)]
    graphs += [random_labeled_tree(8, rng) for _ in range(40)]
    for g in graphs:
        expected = _floyd_warshall(g)
        for v in g.vertices:
            assert distances_from(g, v) == expected[v]


def test_connected_components_ordered_by_smallest_vertex():
    g = Graph.from_edges(5, [(3, 4), (1, 2)])
    assert connected_components(g) == [[0], [1, 2], [3, 4]]


def test_path_order_follows_the_path_from_smaller_end():
    g = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    assert path_order(g) == [1, 3, 0, 2]


def test_path_order_rejects_a_star():
    with pytest.raises(GraphStructureError):
        path_order(make_named("star", 3))


def test_spanning_forest_of_a_cycle():
    forest = spanning_forest(make_named("cycle", 4))
    assert is_forest(forest)
    assert forest.edge_count == 3


# ----------------------------
# rooted trees
# ----------------------------

def test_root_tree_k2():
    tree = root_tree(k2(), 0, 0)
    assert tree.children[0] == (1,)
    assert tree.descendants[0] == {0, 1}
    assert tree.descendants[1] == {1}


def test_root_tree_t_star_at_centre():
    tree = root_tree(make_named("t_star"), 0, 0)
    assert set(tree.children[0]) == {1, 4, 7}
    for j in (1, 2, 3):
        w, v, u = t_star_leg(j)
        assert tree.descendants[w] == {w, v, u}


def test_root_tree_p3_at_middle():
    tree = root_tree(make_named("path", 3), 0, 1)
    assert tree.children[1] == (0, 2)
    assert all(tree.is_leaf(u) for u in (0, 2))
    assert max(tree.depth) <= 1
    assert tree.non_descendants(2) == {0, 1}


def test_root_tree_only_covers_its_component():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    tree = root_tree(g, 3, 2)
    assert tree.vertices == {2, 3}
    assert tree.parent[0] is None
    assert tree.depth[0] == -1


def test_root_tree_rejects_cycle():
    with pytest.raises(GraphStructureError) as exc:
        root_tree(make_named("cycle", 4), 0, 0)
    assert "cycle" in exc.value.message


def test_root_tree_rejects_root_in_other_component():
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(GraphStructureError):
        root_tree(g, 0, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_rooted_subtree_sizes_add_up(n):
    for index, g in enumerate(enumerate_labeled_trees(n)):
        tree = root_tree(g, 0, index % n)
        assert sum(len(tree.children[u]) for u in tree.vertices) == n - 1
        assert len(tree.descendants[tree.root]) == n
        for u in tree.vertices:
            assert len(tree.descendants[u]) == 1 + sum(len(tree.descendants[c]) for c in tree.children[u])


# ----------------------------
# named shapes
# ----------------------------

def test_make_named_path_2_is_k2():
    assert make_named("path", 2) == k2()


def test_make_named_t_star_shape():
    g = make_named("t_star")
    assert g.vertex_count == 10
    assert g.edge_count == 9
    assert list(degree_sequence(g)) == [3] + [2] * 6 + [1] * 3
    assert t_star_leg(2) == (4, 5, 6)


def test_make_named_triangle():
    g = make_named("cycle", 3)
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]


def test_make_named_rejects_unknown_and_small():
    with pytest.raises(GraphStructureError):
        make_named("blob", 3)
    with pytest.raises(GraphStructureError):
        make_named("cycle", 2)
    with pytest.raises(GraphStructureError):
        make_named("path")


def test_graph_from_spec_variants():
    assert graph_from_spec("path:5").vertex_count == 5
    assert graph_from_spec("tstar") == make_named("t_star")
    assert graph_from_spec("spider:3x4").vertex_count == 13
    with pytest.raises(GraphStructureError):
        graph_from_spec("path:x")
    with pytest.raises(GraphStructureError):
        graph_from_spec("cycle")


# ----------------------------
# enumeration
# ----------------------------

@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 3), (4, 16), (5, 125), (6, 1296), (7, 16807)])
def test_labeled_tree_counts(n, count):
    trees = list(enumerate_labeled_trees(n))
    assert len(trees) == count
    assert len({t.canonical_edges() for t in trees}) == count
    for t in trees:
        assert t.edge_count == n - 1
        assert is_forest(t)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_labeled_trees_follow_lexicographic_pruefer_order(n):
    sequences = [tuple(nx.to_prufer_sequence(t.nx_graph)) for t in enumerate_labeled_trees(n)]
    assert sequences == list(itertools.product(range(n), repeat=n - 2))


def test_labeled_trees_n2_is_k2():
    assert list(enumerate_labeled_trees(2)) == [k2()]


def test_labeled_trees_respect_cap():
    with pytest.raises(GraphStructureError):
        list(enumerate_labeled_trees(9))
    with pytest.raises(GraphStructureError):
        list(enumerate_labeled_trees(5, cap=4))


def test_connected_graph_counts():
    assert len(list(enumerate_connected_graphs(3))) == 4
    assert len(list(enumerate_connected_graphs(4))) == 38


def test_unlabeled_graph_counts():
    # 1 + 2 + 4 + 11 isomorphism classes on 1..4 vertices
    assert len(list(enumerate_unlabeled_graphs(4))) == 18
    with pytest.raises(GraphStructureError):
        list(enumerate_unlabeled_graphs(8))


def test_random_labeled_tree_is_seeded():
    a = random_labeled_tree(7, random.Random(3))
    b = random_labeled_tree(7, random.Random(3))
    assert a == b
    assert a.edge_count == 6
    assert is_forest(a)


def test_contains_t_star():
    assert contains_t_star_subtree(make_named("t_star"))
    assert contains_t_star_subtree(make_named("spider", 3, leg_length=4))
    assert not contains_t_star_subtree(make_named("path", 10))
    assert not contains_t_star_subtree(make_named("star", 9))
    assert not contains_t_star_subtree(make_named("spider", 2))


def test_contains_t_star_needs_a_forest():
    with pytest.raises(GraphStructureError):
        contains_t_star_subtree(make_named("cycle", 5))
