"""
Cover maps between simplicial complexes.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from rlab.complexes.complex import Cell, SimplicialComplex
from rlab.errors import NotACover
from rlab.logging_config import get_logger

logger = get_logger("complexes.covers")


@dataclass(frozen=True)
class CoverCheck:
    """Outcome of ``check_cover_map``; falsy on failure with a diagnostic reason."""

    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def permutation_sign(values: Sequence[int]) -> int:
    """Sign of the permutation sorting ``values`` (distinct entries)."""
    inversions = sum(
        1 for a in range(len(values)) for b in range(a + 1, len(values)) if values[a] > values[b]
    )
    return -1 if inversions % 2 else 1


def check_cover_map(f: Sequence[int], X: SimplicialComplex, Y: SimplicialComplex) -> CoverCheck:
    """
    Decide whether the vertex map ``f`` is a cover map X -> Y.

    A cover map is simplicial, surjective on vertices, and for every vertex v
    induces a bijection between the cells containing v and the cells
    containing f(v).
    """
    if len(f) != X.n_vertices:
        return CoverCheck(False, f"map has {len(f)} entries for {X.n_vertices} vertices")
    if any(not 0 <= w < Y.n_vertices for w in f):
        return CoverCheck(False, "map leaves the target vertex set")
    if X.dimension != Y.dimension:
        return CoverCheck(False, f"dimension {X.dimension} does not match {Y.dimension}")
    if set(f) != set(range(Y.n_vertices)):
        return CoverCheck(False, "map is not surjective on vertices")

    for level in X.cells:
        for cell in level:
            image = tuple(sorted({f[v] for v in cell}))
            if len(image) != len(cell):
                return CoverCheck(False, f"cell {cell} collapses to {image}")
            if image not in Y:
                return CoverCheck(False, f"image {image} of cell {cell} is not a cell")

    for v in range(X.n_vertices):
        for i in range(X.dimension + 1):
            upstairs = X.cofaces((v,), i)
            images = {tuple(sorted(f[u] for u in c)) for c in upstairs}
            if len(images) != len(upstairs):
                return CoverCheck(False, f"not locally injective on {i}-cells at vertex {v}")
            if images != set(Y.cofaces((f[v],), i)):
                return CoverCheck(False, f"not locally surjective on {i}-cells at vertex {v}")
    return CoverCheck(True)


@dataclass(frozen=True)
class CoverMap:
    """A verified cover map given by its vertex map."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Tuple[int, ...]

    @classmethod
    def checked(cls, f: Sequence[int], X: SimplicialComplex, Y: SimplicialComplex) -> "CoverMap":
        result = check_cover_map(f, X, Y)
        if not result:
            raise NotACover(result.reason or "unknown")
        return cls(X, Y, tuple(int(w) for w in f))

    @classmethod
    def identity(cls, X: SimplicialComplex) -> "CoverMap":
        return cls(X, X, tuple(range(X.n_vertices)))

    def image(self, cell: Cell) -> Tuple[Cell, int]:
        """Sorted image of ``cell`` and the sign relating the two orientations."""
        mapped = [self.vertex_map[v] for v in cell]
        return tuple(sorted(mapped)), permutation_sign(mapped)

    def compose(self, other: "CoverMap") -> "CoverMap":
        """``other`` after ``self``."""
        return CoverMap(self.source, other.target, tuple(other.vertex_map[w] for w in self.vertex_map))
