"""
Finite simplicial complexes with incidence indexes and the combinatorial metric.

Cells are strictly increasing tuples of vertex ids; vertex ids are dense
integers starting at 0. A complex is immutable once built.
"""
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from rlab.errors import CellNotFound, DisconnectedInput, MalformedCell
from rlab.logging_config import get_logger

logger = get_logger("complexes.complex")

Cell = Tuple[int, ...]


def as_cell(vertices: Iterable[int]) -> Cell:
    """Sort a vertex collection into a cell, rejecting repeats and bad ids."""
    items = list(vertices)
    if not items:
        raise MalformedCell(items, "empty cell")
    for v in items:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise MalformedCell(items, f"vertex {v!r} is not a nonnegative integer")
    cell = tuple(sorted(items))
    if len(set(cell)) != len(cell):
        raise MalformedCell(items)
    return cell


class SimplicialComplex:
    """
    A downward-closed family of cells with per-dimension indexes.

    Attributes:
        cells: ``cells[i]`` is the lexicographically sorted list of i-cells.
        frontier: vertices whose neighbourhood was truncated (generated balls);
            empty for genuinely finite complexes.
    """

    def __init__(self, cells_by_dim: List[List[Cell]], frontier: FrozenSet[int] = frozenset()):
        self.cells: List[List[Cell]] = [sorted(level) for level in cells_by_dim]
        self.index: List[Dict[Cell, int]] = [
            {cell: k for k, cell in enumerate(level)} for level in self.cells
        ]
        self.frontier = frozenset(frontier)
        self._skeleton: Optional[nx.Graph] = None
        n = len(self.cells[0])
        # star[v][i] lists the i-cells containing v (ascending)
        self._star: List[List[List[Cell]]] = [[[] for _ in self.cells] for _ in range(n)]
        for i, level in enumerate(self.cells):
            for cell in level:
                for v in cell:
                    self._star[v][i].append(cell)
        self.neighbors: List[FrozenSet[int]] = [
            frozenset(u for edge in self._star[v][1] for u in edge if u != v) if len(self.cells) > 1 else frozenset()
            for v in range(n)
        ]

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    @property
    def n_vertices(self) -> int:
        return len(self.cells[0])

    @property
    def f_vector(self) -> List[int]:
        return [len(level) for level in self.cells]

    def __contains__(self, cell: Sequence[int]) -> bool:
        key = tuple(sorted(cell))
        return 0 < len(key) <= len(self.cells) and key in self.index[len(key) - 1]

    def require(self, cell: Sequence[int]) -> Cell:
        """Return ``cell`` in canonical form or raise ``CellNotFound``."""
        key = tuple(sorted(cell))
        if key not in self:
            raise CellNotFound(tuple(cell))
        return key

    def cell_index(self, cell: Sequence[int]) -> int:
        key = self.require(cell)
        return self.index[len(key) - 1][key]

    def cofaces(self, cell: Sequence[int], j: int) -> List[Cell]:
        """The j-cells containing ``cell``."""
        key = self.require(cell)
        if j >= len(self.cells) or j < len(key) - 1:
            return []
        members = set(key)
        return [c for c in self._star[key[0]][j] if members.issubset(c)]

    def star_vertices(self, cell: Sequence[int]) -> Set[int]:
        """Vertices v with ``cell`` ∪ {v} a cell (includes the vertices of ``cell``)."""
        key = self.require(cell)
        dim = len(key) - 1
        result = set(key)
        for c in self.cofaces(key, dim + 1):
            result.update(c)
        return result

    def maximal_cells(self) -> List[Cell]:
        maximal = []
        for i, level in enumerate(self.cells):
            for cell in level:
                if not self.cofaces(cell, i + 1):
                    maximal.append(cell)
        return maximal

    def skeleton(self) -> nx.Graph:
        """The 1-skeleton as a networkx graph on ``range(n_vertices)`` (shared, do not mutate)."""
        if self._skeleton is None:
            graph = nx.Graph()
            graph.add_nodes_from(range(self.n_vertices))
            if self.dimension >= 1:
                graph.add_edges_from(self.cells[1])
            self._skeleton = graph
        return self._skeleton

    def interior(self) -> Set[int]:
        return set(range(self.n_vertices)) - self.frontier

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector}, frontier={len(self.frontier)})"


def build_complex(
    maximal_cells: Iterable[Iterable[int]],
    *,
    require_connected: bool = True,
    frontier: Iterable[int] = (),
) -> SimplicialComplex:
    """
    Build a complex from generating cells by downward closure.

    Args:
        maximal_cells: Cells whose subsets form the complex (need not be maximal).
        require_connected: Raise ``DisconnectedInput`` on more than one component.
        frontier: Vertices flagged as boundary-contaminated (generated balls).

    Raises:
        MalformedCell: repeated vertices, negative ids, or ids not contiguous from 0.
        DisconnectedInput: the closure has several components.
    """
    generators = [as_cell(c) for c in maximal_cells]
    if not generators:
        raise MalformedCell([], "no cells given")

    dimension = max(len(c) for c in generators) - 1
    levels: List[Set[Cell]] = [set() for _ in range(dimension + 1)]
    for cell in sorted(set(generators), key=len, reverse=True):
        if cell in levels[len(cell) - 1]:
            continue
        for size in range(len(cell), 0, -1):
            levels[size - 1].update(combinations(cell, size))

    vertices = sorted(v for (v,) in levels[0])
    if vertices[-1] != len(vertices) - 1:
        missing = sorted(set(range(vertices[-1] + 1)) - set(vertices))
        raise MalformedCell(tuple(missing), "vertex ids must be contiguous from 0")

    complex_ = SimplicialComplex([list(level) for level in levels], frozenset(frontier))
    components = nx.number_connected_components(complex_.skeleton())
    if require_connected and components != 1:
        raise DisconnectedInput(components)
    logger.debug(f"Built complex with f-vector {complex_.f_vector}")
    return complex_


def disjoint_union(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    """Place ``second`` after ``first`` with shifted vertex ids."""
    shift = first.n_vertices
    cells = list(first.maximal_cells())
    cells += [tuple(v + shift for v in c) for c in second.maximal_cells()]
    frontier = set(first.frontier) | {v + shift for v in second.frontier}
    return build_complex(cells, require_connected=False, frontier=frontier)


def _vertex_distances(X: SimplicialComplex, sources: Iterable[int], cutoff: Optional[int] = None) -> Dict[int, int]:
    return dict(nx.multi_source_dijkstra_path_length(X.skeleton(), set(sources), cutoff=cutoff))


def dist(X: SimplicialComplex, x: Sequence[int], y: Sequence[int]) -> int:
    """
    Combinatorial distance between two cells.

    The minimal length t of a chain of cells y_1..y_t with x ⊆ y_1, y ⊆ y_t and
    consecutive cells meeting. Consecutive intersections give a walk in the
    1-skeleton, so for x ∪ y not a cell the distance is 2 plus the graph
    distance between the vertex stars of x and y.
    """
    a, b = X.require(x), X.require(y)
    if a == b:
        return 0
    if tuple(sorted(set(a) | set(b))) in X:
        return 1
    lengths = _vertex_distances(X, X.star_vertices(a))
    reachable = [lengths[v] for v in X.star_vertices(b) if v in lengths]
    if not reachable:
        raise DisconnectedInput(2)
    return 2 + min(reachable)


def ball(X: SimplicialComplex, x: Sequence[int], n: int) -> Set[Cell]:
    """All cells at combinatorial distance at most ``n`` from ``x``."""
    center = X.require(x)
    if n < 0:
        return set()
    result: Set[Cell] = {center}
    if n == 0:
        return result
    lengths = _vertex_distances(X, X.star_vertices(center), cutoff=max(n - 2, 0))
    for level in X.cells:
        for cell in level:
            if cell == center:
                continue
            if tuple(sorted(set(cell) | set(center))) in X:
                result.add(cell)
            elif n >= 2:
                near = [lengths[v] for v in X.star_vertices(cell) if v in lengths]
                if near and 2 + min(near) <= n:
                    result.add(cell)
    return result
