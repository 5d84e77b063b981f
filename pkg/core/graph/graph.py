# core/graph/graph.py
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

import networkx as nx

# Distance to a vertex in another component. Ordered above every finite
# distance, and INFINITE <= INFINITE holds.
INFINITE = math.inf

Distance = Union[int, float]


# ----------------------------
# Exceptions
# ----------------------------

@dataclass
class GraphFormatError(Exception):
    message: str
    line_number: Optional[int] = None
    details: Optional[Any] = None

    def __str__(self) -> str:
        where = f"line {self.line_number}: " if self.line_number is not None else ""
        if self.details is None:
            return f"{where}{self.message}"
        return f"{where}{self.message} | details={self.details!r}"


@dataclass
class GraphStructureError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


# ----------------------------
# Graph value
# ----------------------------

@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on the dense vertex ids 0..vertex_count-1.

    adjacency[v] is the ascending tuple of neighbors of v. Instances are
    immutable; build them with Graph.from_edges (which validates) rather
    than the raw constructor.
    """

    vertex_count: int
    adjacency: Tuple[Tuple[int, ...], ...]

    @staticmethod
    def from_edges(vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if vertex_count < 0:
            raise GraphStructureError("vertex_count must be non-negative.", details=vertex_count)

        neighbors: List[set] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphStructureError("Vertex id out of range.", details=(u, v))
            if u == v:
                raise GraphStructureError("Self-loop.", details=(u, v))
            if v in neighbors[u]:
                raise GraphStructureError("Duplicate edge.", details=(u, v))
            neighbors[u].add(v)
            neighbors[v].add(u)

        return Graph(
            vertex_count=vertex_count,
            adjacency=tuple(tuple(sorted(ns)) for ns in neighbors),
        )

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(ns) for ns in self.adjacency) // 2

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges())
        return g

    def to_networkx(self) -> nx.Graph:
        return self.nx_graph.copy()

    def canonical_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(self.edges())


# ----------------------------
# Text format
# ----------------------------

def parse_graph(text: Union[str, TextIO]) -> Graph:
    """
    Parse the "n m" header followed by m "u v" edge lines.

    Blank lines and lines starting with '#' are ignored.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text

    header: Optional[Tuple[int, int]] = None
    edges: List[Tuple[int, int]] = []

    for line_number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("Expected two integers.", line_number=line_number, details=line)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise GraphFormatError("Expected decimal integers.", line_number=line_number, details=line) from e

        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("Negative count in header.", line_number=line_number, details=line)
            header = (a, b)
            continue

        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError("Vertex id out of range.", line_number=line_number, details=line)
        if a == b:
            raise GraphFormatError("Self-loop.", line_number=line_number, details=line)
        edges.append((a, b))

    if header is None:
        raise GraphFormatError("Missing 'n m' header.")

    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"Header announces {m} edges, found {len(edges)}.")

    try:
        return Graph.from_edges(n, edges)
    except GraphStructureError as e:
        raise GraphFormatError(e.message, details=e.details) from e


def format_graph(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ----------------------------
# Structure queries
# ----------------------------

@dataclass(frozen=True)
class ForestVerdict:
    is_forest: bool
    # Closed vertex walk (first == last) around one cycle when not a forest.
    cycle: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.is_forest


def is_forest(g: Graph) -> ForestVerdict:
    try:
        cycle_edges = nx.find_cycle(g.nx_graph)
    except nx.NetworkXNoCycle:
        return ForestVerdict(is_forest=True)

    walk = [cycle_edges[0][0]]
    for _, v in cycle_edges:
        walk.append(v)
    return ForestVerdict(is_forest=False, cycle=tuple(walk))


def distances_from(g: Graph, v: int) -> List[Distance]:
    """Breadth-first distances from v; other components map to INFINITE."""
    if not 0 <= v < g.vertex_count:
        raise GraphStructureError("Source vertex out of range.", details=v)

    reached = nx.single_source_shortest_path_length(g.nx_graph, v)
    return [reached.get(u, INFINITE) for u in g.vertices]


def all_pairs_distances(g: Graph) -> Tuple[Tuple[Distance, ...], ...]:
    return tuple(tuple(distances_from(g, v)) for v in g.vertices)


def connected_components(g: Graph) -> List[List[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    comps = [sorted(c) for c in nx.connected_components(g.nx_graph)]
    return sorted(comps, key=lambda c: c[0])


def component_of(g: Graph, v: int) -> List[int]:
    return sorted(nx.node_connected_component(g.nx_graph, v))


def path_order(g: Graph) -> List[int]:
    """Vertices of a path graph from its smaller endpoint to the other end."""
    n = g.vertex_count
    if n == 0:
        raise GraphStructureError("Empty graph is not a path.")
    if n == 1:
        return [0]
    if g.edge_count != n - 1 or any(g.degree(v) > 2 for v in g.vertices) or not nx.is_connected(g.nx_graph):
        raise GraphStructureError("Graph is not a path.")

    start = min(v for v in g.vertices if g.degree(v) == 1)
    order = [start]
    prev: Optional[int] = None
    current = start
    while len(order) < n:
        nxt = next(u for u in g.neighbors(current) if u != prev)
        order.append(nxt)
        prev, current = current, nxt
    return order


def spanning_forest(g: Graph) -> Graph:
    """Breadth-first spanning forest, each tree grown from its smallest vertex."""
    edges: List[Tuple[int, int]] = []
    for comp in connected_components(g):
        edges.extend(nx.bfs_edges(g.nx_graph, source=comp[0]))
    return Graph.from_edges(g.vertex_count, edges)


def degree_sequence(g: Graph) -> Sequence[int]:
    return sorted((g.degree(v) for v in g.vertices), reverse=True)
