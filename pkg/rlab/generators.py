"""
Deterministic generators of small complexes.

Randomized generators take an explicit seed; the same seed always yields
the same complex.
"""
from itertools import combinations, product
from typing import Iterable, List, Set, Tuple

import networkx as nx
import numpy as np

from config import REGULAR_MAX_ATTEMPTS, RLAB_SEED
from rlab.building.colored import ColoredComplex, colored_from_complex
from rlab.complexes.complex import SimplicialComplex, build_complex
from rlab.complexes.groups import GroupAction
from rlab.errors import InvalidParams
from rlab.logging_config import get_logger

logger = get_logger("generators")

Edge = Tuple[int, int]


def cycle(n: int) -> SimplicialComplex:
    """The cycle C_n."""
    if n < 3:
        raise InvalidParams(f"a cycle needs at least 3 vertices, got {n}")
    return build_complex([(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> SimplicialComplex:
    """The complete graph K_n as a 1-dimensional complex."""
    if n < 2:
        raise InvalidParams(f"a complete graph needs at least 2 vertices, got {n}")
    return build_complex(combinations(range(n), 2))


def petersen() -> SimplicialComplex:
    outer = [(v, (v + 1) % 5) for v in range(5)]
    spokes = [(v, v + 5) for v in range(5)]
    inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
    return build_complex(outer + spokes + inner)


def prism(n: int) -> SimplicialComplex:
    """C_n × K_2: vertex v on the first cycle, v + n on the second."""
    if n < 3:
        raise InvalidParams(f"a prism needs n >= 3, got {n}")
    edges = [(v, (v + 1) % n) for v in range(n)]
    edges += [(n + v, n + (v + 1) % n) for v in range(n)]
    edges += [(v, v + n) for v in range(n)]
    return build_complex(edges)


def _simple_edges(pairs: List[Edge]) -> List[Edge]:
    seen: Set[Edge] = set()
    for u, v in pairs:
        if u == v:
            return []
        edge = (min(u, v), max(u, v))
        if edge in seen:
            return []
        seen.add(edge)
    return sorted(seen)


def _draw_regular_pairs(n: int, k: int, rng: np.random.Generator) -> List[Edge]:
    pairs: List[Edge] = []
    for _ in range(k // 2):
        pi = rng.permutation(n)
        pairs.extend((v, int(pi[v])) for v in range(n))
    if k % 2:
        order = rng.permutation(n)
        pairs.extend((int(order[2 * m]), int(order[2 * m + 1])) for m in range(n // 2))
    return pairs


def random_regular(n: int, k: int, seed: int = RLAB_SEED, max_attempts: int = REGULAR_MAX_ATTEMPTS) -> SimplicialComplex:
    """
    A connected simple k-regular graph on n vertices from the permutation model.

    Each attempt draws ⌊k/2⌋ uniform permutations π, contributing the edges
    {v, π(v)}, and for odd k one uniform perfect matching. Attempts with a
    loop, a repeated edge or several components are rejected.

    Raises:
        InvalidParams: n·k odd, k >= n, or no graph within ``max_attempts``.
    """
    if (n * k) % 2:
        raise InvalidParams(f"n·k = {n * k} must be even for a {k}-regular graph on {n} vertices")
    if not 0 < k < n:
        raise InvalidParams(f"degree {k} must satisfy 0 < k < n = {n}")
    rng = np.random.default_rng(seed)
    for attempt in range(1, max_attempts + 1):
        edges = _simple_edges(_draw_regular_pairs(n, k, rng))
        if not edges:
            continue
        graph = nx.Graph(edges)
        if graph.number_of_nodes() == n and nx.is_connected(graph):
            logger.info(f"Random {k}-regular graph on {n} vertices after {attempt} attempt(s) (seed {seed})")
            return build_complex(edges)
    logger.warning(f"No connected simple {k}-regular graph on {n} vertices in {max_attempts} attempts")
    raise InvalidParams(f"no connected simple {k}-regular graph on {n} vertices in {max_attempts} attempts")


def torus_triangulation(m: int, n: int) -> SimplicialComplex:
    """
    The m×n triangulated torus: vertex (i, j) has id i·n + j and every grid
    square splits along its main diagonal.
    """
    if m < 3 or n < 3:
        raise InvalidParams(f"torus grid {m}x{n} needs both sides >= 3")

    def vid(i: int, j: int) -> int:
        return (i % m) * n + (j % n)

    triangles = []
    for i, j in product(range(m), range(n)):
        triangles.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
        triangles.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    return build_complex(triangles)


def complete_multipartite(size: int, d: int = 3) -> ColoredComplex:
    """
    K_{size,…,size} with d parts, every transversal clique a cell, colored by part.

    Vertex x of part c has id c·size + x and color c, so the colored adjacency
    a_k connects part c to part c + k with all size² edges.
    """
    if size < 1 or d < 2:
        raise InvalidParams(f"complete multipartite needs size >= 1 and d >= 2, got {size}, {d}")
    parts = [range(c * size, (c + 1) * size) for c in range(d)]
    cells = list(product(*parts))
    X = build_complex(cells)
    logger.info(f"Complete {d}-partite complex with parts of size {size}: f-vector {X.f_vector}")
    return colored_from_complex(X, d, [v // size for v in range(d * size)])



def tripartite_circulant(n: int, shifts: Iterable[int]) -> ColoredComplex:
    """
    The 3-colored circulant on Z/n × Z/3.

    Vertex x of color c has id c·n + x. Each vertex (x, c) is joined to
    (x + s, c + 1) for every shift s, and the triangles are the triples
    (x, 0), (x + a, 1), (x + a + b, 2) with −a − b again a shift. With
    seven shifts the colored degrees are those of the d = 3, q = 2 building.
    """
    shifts = sorted({int(s) % n for s in shifts}) if n > 0 else []
    if n < 1 or not shifts:
        raise InvalidParams(f"circulant needs n >= 1 and at least one shift, got {n}, {shifts}")
    allowed = set(shifts)
    cells: List[Tuple[int, ...]] = []
    for x, s in product(range(n), shifts):
        cells.append((x, n + (x + s) % n))
        cells.append((n + x, 2 * n + (x + s) % n))
        cells.append((2 * n + x, (x + s) % n))
    for x, a, b in product(range(n), shifts, shifts):
        if (-a - b) % n in allowed:
            cells.append((x, n + (x + a) % n, 2 * n + (x + a + b) % n))
    X = build_complex(cells)
    logger.info(f"Tripartite circulant n={n} shifts={shifts}: f-vector {X.f_vector}")
    return colored_from_complex(X, 3, [v // n for v in range(3 * n)])


def circulant_translation(n: int, step: int, parts: int = 3) -> GroupAction:
    """The action x -> x + step on every color class of a circulant with the given number of parts."""
    return GroupAction.of([[c * n + (x + step) % n for c in range(parts) for x in range(n)]])


GENERATORS = ("cycle", "complete", "petersen", "prism", "regular", "torus", "tripartite", "circulant")
