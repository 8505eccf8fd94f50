"""
Colored complexes: Z/d vertex colors and directed-edge colors.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Set, Tuple

from rlab.complexes.complex import SimplicialComplex, build_complex
from rlab.complexes.groups import GroupAction, QuotientResult, quotient_by_action
from rlab.errors import ColoringInconsistent, FileFormatError, InvalidParams, ValidationError
from rlab.io import complex_payload, read_model, with_context, write_json
from rlab.models import ComplexFile
from rlab.logging_config import get_logger

logger = get_logger("building.colored")

DirectedEdge = Tuple[int, int]


@dataclass(frozen=True)
class BallInfo:
    """
    Truncation bookkeeping of a generated ball.

    ``distance[v]`` is the distance from the base vertex. Rows of adjacency
    operators are exact on ``interior`` (distance < radius); products of two
    such operators are exact on ``core`` (distance <= radius - 2).
    """

    radius: int
    distance: Tuple[int, ...]
    truncation: Optional[int] = None

    @property
    def frontier(self) -> Set[int]:
        return {v for v, n in enumerate(self.distance) if n == self.radius}

    @property
    def interior(self) -> Set[int]:
        return {v for v, n in enumerate(self.distance) if n < self.radius}

    @property
    def core(self) -> Set[int]:
        return {v for v, n in enumerate(self.distance) if n <= self.radius - 2}


@dataclass
class ColoredComplex:
    complex: SimplicialComplex
    d: int
    vertex_colors: Tuple[int, ...]
    edge_colors: Dict[DirectedEdge, int]
    ball: Optional[BallInfo] = field(default=None)

    def __post_init__(self):
        self.validate()

    @property
    def boundary_affected(self) -> bool:
        return self.ball is not None and bool(self.ball.frontier)

    def edge_color(self, u: int, v: int) -> int:
        return self.edge_colors[(u, v)]

    def validate(self) -> None:
        """
        Check the coloring invariants.

        Raises:
            ColoringInconsistent: naming the first failing directed edge.
        """
        d = self.d
        if d < 2:
            raise InvalidParams(f"d = {d} must be at least 2")
        if len(self.vertex_colors) != self.complex.n_vertices:
            raise InvalidParams(
                f"{len(self.vertex_colors)} vertex colors for {self.complex.n_vertices} vertices"
            )
        edges = set(self.complex.cells[1]) if self.complex.dimension >= 1 else set()
        for (u, v) in self.edge_colors:
            if tuple(sorted((u, v))) not in edges:
                raise ColoringInconsistent((u, v), "colored pair is not an edge")
        for u, v in sorted(edges):
            for a, b in ((u, v), (v, u)):
                if (a, b) not in self.edge_colors:
                    raise ColoringInconsistent((a, b), "missing color")
            forward, backward = self.edge_colors[(u, v)], self.edge_colors[(v, u)]
            if (forward + backward) % d:
                raise ColoringInconsistent((u, v), f"{forward} + {backward} is not 0 mod {d}")
            if forward % d == 0:
                raise ColoringInconsistent((u, v), f"color {forward} is 0 mod {d}")
            expected = (self.vertex_colors[v] - self.vertex_colors[u]) % d
            if forward % d != expected:
                raise ColoringInconsistent(
                    (u, v), f"color {forward} differs from vertex color difference {expected}"
                )


def derive_vertex_colors(X: SimplicialComplex, d: int, edge_colors: Dict[DirectedEdge, int]) -> Tuple[int, ...]:
    """Propagate colors from vertex 0 (color 0) along colored edges."""
    colors: Dict[int, int] = {}
    for root in range(X.n_vertices):
        if root in colors:
            continue
        colors[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(X.neighbors[u]):
                if (u, v) not in edge_colors:
                    raise ColoringInconsistent((u, v), "missing color")
                value = (colors[u] + edge_colors[(u, v)]) % d
                if v not in colors:
                    colors[v] = value
                    queue.append(v)
                elif colors[v] != value:
                    raise ColoringInconsistent((u, v), "edge colors do not come from a vertex coloring")
    return tuple(colors[v] for v in range(X.n_vertices))


def colored_from_complex(
    X: SimplicialComplex,
    d: int,
    vertex_colors: Sequence[int],
    ball: Optional[BallInfo] = None,
) -> ColoredComplex:
    """Attach edge colors c(u, v) = color(v) − color(u) mod d."""
    colors = tuple(int(c) % d for c in vertex_colors)
    edge_colors: Dict[DirectedEdge, int] = {}
    if X.dimension >= 1:
        for u, v in X.cells[1]:
            edge_colors[(u, v)] = (colors[v] - colors[u]) % d
            edge_colors[(v, u)] = (colors[u] - colors[v]) % d
    return ColoredComplex(X, d, colors, edge_colors, ball)


def load_colored_complex(path) -> ColoredComplex:
    """
    Read a colored complex file.

    Edge colors default to vertex color differences; vertex colors are
    propagated from edge colors when only those are given.

    Raises:
        ColoringInconsistent: with the failing directed edge.
        FileFormatError: the file is unreadable or lacks ``d``.
    """
    payload = read_model(path, ComplexFile)
    if payload.d is None:
        raise FileFormatError(path, "colored complexes need the color modulus 'd'")
    ball = None
    if payload.radius is not None and payload.distance is not None:
        ball = BallInfo(payload.radius, tuple(payload.distance), payload.truncation)
    try:
        X = build_complex(payload.maximal_cells, frontier=ball.frontier if ball else ())
        if payload.edge_colors is None:
            if payload.vertex_colors is None:
                raise FileFormatError(path, "colored complexes need vertex_colors or edge_colors")
            colored = colored_from_complex(X, payload.d, payload.vertex_colors, ball)
        else:
            edge_colors = {(int(u), int(v)): int(c) for u, v, c in payload.edge_colors}
            vertex_colors = payload.vertex_colors
            if vertex_colors is None:
                vertex_colors = derive_vertex_colors(X, payload.d, edge_colors)
            colored = ColoredComplex(X, payload.d, tuple(vertex_colors), edge_colors, ball)
    except FileFormatError:
        raise
    except ValidationError as e:
        raise with_context(path, e)
    logger.info(f"Loaded colored complex (d={payload.d}, f-vector {X.f_vector}) from {path}")
    return colored


def save_colored_complex(colored: ColoredComplex, path):
    payload = complex_payload(colored.complex)
    payload["d"] = colored.d
    payload["vertex_colors"] = list(colored.vertex_colors)
    payload["edge_colors"] = [[u, v, c] for (u, v), c in sorted(colored.edge_colors.items())]
    if colored.ball is not None:
        payload["radius"] = colored.ball.radius
        payload["distance"] = list(colored.ball.distance)
        if colored.ball.truncation is not None:
            payload["truncation"] = colored.ball.truncation
    return write_json(path, payload)


def colored_quotient(colored: ColoredComplex, action: GroupAction) -> Tuple[ColoredComplex, QuotientResult]:
    """
    Quotient of a colored complex by an admissible, color-preserving action.

    Raises:
        NotAdmissible: from ``quotient_by_action``.
        ColoringInconsistent: some generator moves a vertex to another color.
    """
    for g in action.generators:
        for v, image in enumerate(g):
            if colored.vertex_colors[v] != colored.vertex_colors[image]:
                raise ColoringInconsistent((v, image), "group action does not preserve vertex colors")
    result = quotient_by_action(colored.complex, action)
    colors = [0] * result.quotient.n_vertices
    for v, w in enumerate(result.projection.vertex_map):
        colors[w] = colored.vertex_colors[v]
    return colored_from_complex(result.quotient, colored.d, colors), result
