# core/graph/rooted_tree.py
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

import networkx as nx

from core.graph.graph import Graph, GraphStructureError, component_of


@dataclass(frozen=True)
class RootedTree:
    """
    One acyclic component of `base`, rooted at `root`.

    Per-vertex tuples are indexed by vertex id of the whole base graph;
    entries for vertices outside `vertices` are None / () / -1 / frozenset().
    descendants[u] is V_u: u together with all of its descendants.
    """

    base: Graph
    root: int
    vertices: FrozenSet[int]
    parent: Tuple[Optional[int], ...]
    children: Tuple[Tuple[int, ...], ...]
    depth: Tuple[int, ...]
    descendants: Tuple[FrozenSet[int], ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    def is_leaf(self, u: int) -> bool:
        return not self.children[u]

    def non_descendants(self, u: int) -> FrozenSet[int]:
        return self.vertices - self.descendants[u]

    def subtree_union(self, roots: Tuple[int, ...] | List[int]) -> FrozenSet[int]:
        out: FrozenSet[int] = frozenset()
        for u in roots:
            out = out | self.descendants[u]
        return out


def root_tree(g: Graph, component_vertex: int, r: int) -> RootedTree:
    """Root the component containing component_vertex at r."""
    if not (0 <= component_vertex < g.vertex_count and 0 <= r < g.vertex_count):
        raise GraphStructureError("Vertex out of range.", details=(component_vertex, r))

    comp = component_of(g, component_vertex)
    if r not in comp:
        raise GraphStructureError("Root lies outside the component.", details=(component_vertex, r))

    sub = g.nx_graph.subgraph(comp)
    if sub.number_of_edges() != len(comp) - 1:
        cycle = [u for u, _ in nx.find_cycle(sub)]
        raise GraphStructureError("Component contains a cycle.", details=cycle)

    n = g.vertex_count
    parent: List[Optional[int]] = [None] * n
    depth: List[int] = [-1] * n
    children: List[List[int]] = [[] for _ in range(n)]

    depth[r] = 0
    order = [r]
    queue = deque([r])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if depth[w] == -1:
                parent[w] = u
                depth[w] = depth[u] + 1
                children[u].append(w)
                order.append(w)
                queue.append(w)

    # bottom-up: reverse BFS order visits children before parents
    desc: List[FrozenSet[int]] = [frozenset() for _ in range(n)]
    for u in reversed(order):
        acc = {u}
        for c in children[u]:
            acc |= desc[c]
        desc[u] = frozenset(acc)

    return RootedTree(
        base=g,
        root=r,
        vertices=frozenset(comp),
        parent=tuple(parent),
        children=tuple(tuple(sorted(cs)) for cs in children),
        depth=tuple(depth),
        descendants=tuple(desc),
    )
