"""
Random r-fold covers of graphs by permutation voltages.
"""
from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx
import numpy as np

from config import LIFT_MAX_ATTEMPTS, RLAB_SEED
from rlab.complexes.complex import SimplicialComplex, build_complex
from rlab.complexes.covers import CoverMap
from rlab.errors import DimensionUnsupported, InvalidParams
from rlab.logging_config import get_logger

logger = get_logger("spectra.lifts")


@dataclass(frozen=True)
class Lift:
    cover: SimplicialComplex
    projection: CoverMap
    permutations: Tuple[Tuple[int, ...], ...]
    attempts: int


def random_lift(X: SimplicialComplex, r: int, seed: int = RLAB_SEED, max_attempts: int = LIFT_MAX_ATTEMPTS) -> Lift:
    """
    An r-fold cover of the graph X, redrawn until connected.

    Vertex (u, a) of the lift has id u·r + a; every edge {u, v} (u < v)
    draws a permutation π and lifts to the edges {(u, a), (v, π(a))}.

    Raises:
        DimensionUnsupported: X has dimension above 1.
        InvalidParams: r < 1 or no connected lift within ``max_attempts``.
    """
    if X.dimension > 1:
        raise DimensionUnsupported(X.dimension)
    if r < 1:
        raise InvalidParams(f"lift degree {r} must be positive")
    rng = np.random.default_rng(seed)
    edges = X.cells[1] if X.dimension == 1 else []
    for attempt in range(1, max_attempts + 1):
        permutations = tuple(tuple(int(a) for a in rng.permutation(r)) for _ in edges)
        lifted: List[Tuple[int, int]] = [
            (u * r + a, v * r + pi[a]) for (u, v), pi in zip(edges, permutations) for a in range(r)
        ]
        graph = nx.Graph()
        graph.add_nodes_from(range(X.n_vertices * r))
        graph.add_edges_from(lifted)
        if nx.is_connected(graph):
            cells = lifted or [(v,) for v in range(X.n_vertices * r)]
            cover = build_complex(cells)
            projection = CoverMap.checked([v // r for v in range(X.n_vertices * r)], cover, X)
            logger.info(f"{r}-fold lift after {attempt} attempt(s): {cover.f_vector}")
            return Lift(cover, projection, permutations, attempt)
        logger.debug(f"Lift attempt {attempt} disconnected")
    logger.warning(f"No connected {r}-fold lift in {max_attempts} attempts")
    raise InvalidParams(f"no connected {r}-fold lift found in {max_attempts} attempts")
