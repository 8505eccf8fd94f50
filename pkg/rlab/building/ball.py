"""
Balls in the building of PGL_d over F_q((t)) and in regular trees.
"""
from collections import deque
from typing import Dict, List, Set, Tuple

import networkx as nx

from config import BUILDING_VERTEX_BUDGET
from rlab.building.colored import BallInfo, ColoredComplex, colored_from_complex
from rlab.building.lattice import LatticeClass, LocalFieldParams, interior_degree, neighbors
from rlab.complexes.complex import build_complex
from rlab.errors import BudgetExceeded, InvalidParams
from rlab.logging_config import get_logger

logger = get_logger("building.ball")


def ball_size_bound(degree: int, radius: int) -> int:
    """Vertex count of the radius-ball in the degree-regular tree, an upper bound for the building."""
    total, sphere = 1, degree
    for _ in range(radius):
        total += sphere
        sphere *= degree - 1
    return total


def _cells_from_graph(graph: nx.Graph, max_size: int) -> List[Tuple[int, ...]]:
    cells = []
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > max_size:
            break
        cells.append(tuple(sorted(clique)))
    return cells


def building_ball(params: LocalFieldParams, radius: int, budget: int = BUILDING_VERTEX_BUDGET) -> ColoredComplex:
    """
    All vertices within distance ``radius`` of the standard lattice class.

    Vertices are numbered in breadth-first order from the base class (0),
    neighbours in subspace enumeration order. Cells are the cliques of the
    1-skeleton up to size d. Every ball vertex, frontier included, has its
    neighbours generated so that edges between frontier vertices are found.

    Raises:
        BudgetExceeded: the size bound exceeds ``budget``.
    """
    if radius < 0:
        raise InvalidParams(f"radius {radius} must be nonnegative")
    if params.r > 1:
        return regular_tree_ball(params.q ** params.r + 1, radius, budget)

    degree = interior_degree(params)
    estimate = ball_size_bound(degree, radius)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    truncation = radius + 1
    logger.info(f"Generating building ball q={params.q} d={params.d} radius={radius} (degree {degree})")

    base = LatticeClass.base(params.d)
    ids: Dict[Tuple, int] = {base.key: 0}
    classes: List[LatticeClass] = [base]
    distance: List[int] = [0]
    graph = nx.Graph()
    graph.add_node(0)

    queue = deque([0])
    while queue:
        v = queue.popleft()
        for neighbor, _ in neighbors(classes[v], params, truncation):
            w = ids.get(neighbor.key)
            if w is None:
                if distance[v] >= radius:
                    continue
                w = len(classes)
                ids[neighbor.key] = w
                classes.append(neighbor)
                distance.append(distance[v] + 1)
                graph.add_node(w)
                queue.append(w)
            graph.add_edge(v, w)

    for v in range(len(classes)):
        if distance[v] < radius and graph.degree[v] != degree:
            logger.warning(f"Interior vertex {v} has degree {graph.degree[v]}, expected {degree}")

    cells = _cells_from_graph(graph, params.d)
    frontier = {v for v, n in enumerate(distance) if n == radius}
    X = build_complex(cells, frontier=frontier)
    info = BallInfo(radius, tuple(distance), truncation)
    if radius > 0:
        logger.warning(f"Ball has {len(frontier)} frontier vertices; spectra on it are boundary-affected")
    logger.info(f"Building ball: f-vector {X.f_vector}")
    return colored_from_complex(X, params.d, [c.color for c in classes], info)


def regular_tree_ball(k: int, radius: int, budget: int = BUILDING_VERTEX_BUDGET) -> ColoredComplex:
    """The radius-ball of the k-regular tree, 2-colored by depth parity."""
    if k < 2:
        raise InvalidParams(f"tree degree {k} must be at least 2")
    if radius < 0:
        raise InvalidParams(f"radius {radius} must be nonnegative")
    estimate = ball_size_bound(k, radius)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    distance = [0]
    edges: List[Tuple[int, int]] = []
    level = [0]
    for depth in range(1, radius + 1):
        following = []
        for parent in level:
            for _ in range(k if parent == 0 else k - 1):
                child = len(distance)
                distance.append(depth)
                edges.append((parent, child))
                following.append(child)
        level = following
    cells = edges or [(0,)]
    frontier: Set[int] = {v for v, n in enumerate(distance) if n == radius}
    X = build_complex(cells, frontier=frontier)
    return colored_from_complex(X, 2, [n % 2 for n in distance], BallInfo(radius, tuple(distance)))
