# core/graph/named.py
from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from core.graph.graph import Graph, GraphStructureError

# T* numbering: x = 0; leg j in {1, 2, 3} is (w_j, v_j, u_j) = (3j-2, 3j-1, 3j).
T_STAR_X = 0


def t_star_leg(j: int) -> Tuple[int, int, int]:
    """(w_j, v_j, u_j) for j in {1, 2, 3}."""
    if j not in (1, 2, 3):
        raise ValueError(f"T* has legs 1..3, got {j}")
    base = 3 * (j - 1)
    return base + 1, base + 2, base + 3


def _path(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def _cycle(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def _star(k: int) -> Graph:
    # center 0, leaves 1..k
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def spider(legs: int, leg_length: int = 3) -> Graph:
    """Center 0; leg j (0-based) is j*L+1 .. j*L+L, listed from the center outwards."""
    if legs < 1 or leg_length < 1:
        raise GraphStructureError("Spider needs at least one leg of length >= 1.", details=(legs, leg_length))
    edges: List[Tuple[int, int]] = []
    for j in range(legs):
        prev = 0
        for step in range(1, leg_length + 1):
            v = j * leg_length + step
            edges.append((prev, v))
            prev = v
    return Graph.from_edges(legs * leg_length + 1, edges)


_MINIMUM: Dict[str, int] = {"path": 1, "cycle": 3, "star": 1, "spider": 1}

_BUILDERS: Dict[str, Callable[[int], Graph]] = {
    "path": _path,
    "cycle": _cycle,
    "star": _star,
    "spider": spider,
}


def make_named(name: str, k: Optional[int] = None, leg_length: int = 3) -> Graph:
    """
    Build a named shape with a fixed vertex numbering.

    path k:    0-1-...-(k-1)
    cycle k:   0-1-...-(k-1)-0
    star k:    center 0 with leaves 1..k
    spider k:  center 0, k legs of `leg_length`, see spider()
    t_star:    spider(3) with x = 0 and leg j = (w_j, v_j, u_j) = (3j-2, 3j-1, 3j)
    """
    if name == "t_star":
        return spider(3, 3)

    builder = _BUILDERS.get(name)
    if builder is None:
        available = ", ".join(sorted([*_BUILDERS, "t_star"]))
        raise GraphStructureError(f"Unknown graph shape '{name}'. Available: {available}")

    if k is None:
        raise GraphStructureError(f"Shape '{name}' needs a size parameter.")
    if k < _MINIMUM[name]:
        raise GraphStructureError(f"Shape '{name}' needs k >= {_MINIMUM[name]}.", details=k)

    if name == "spider":
        return spider(k, leg_length)
    return builder(k)


def graph_from_spec(spec: str) -> Graph:
    """
    Parse the `shape:param` flag syntax: path:5, cycle:4, star:3, spider:3,
    spider:3x4 (three legs of length four), t_star.
    """
    name, _, param = spec.partition(":")
    name = name.strip()
    if name in ("t_star", "tstar"):
        return make_named("t_star")

    if not param:
        raise GraphStructureError(f"Shape '{name}' needs a parameter, e.g. {name}:4")

    if name == "spider" and "x" in param:
        legs_s, _, length_s = param.partition("x")
        return make_named("spider", int(legs_s), leg_length=int(length_s))

    try:
        k = int(param)
    except ValueError as e:
        raise GraphStructureError("Shape parameter must be an integer.", details=spec) from e
    return make_named(name, k)
