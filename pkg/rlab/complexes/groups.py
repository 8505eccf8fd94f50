"""
Group actions on finite complexes, the admissibility criterion and quotients.

A group is given by vertex permutations (one-line notation). Elements are
materialized by breadth-first closure over the generators.
"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from config import GROUP_ORDER_CAP
from rlab.complexes.complex import Cell, SimplicialComplex, build_complex
from rlab.complexes.covers import CoverMap, check_cover_map
from rlab.errors import GroupTooLarge, InvalidParams, NotACover, NotAdmissible, NotAnAutomorphism
from rlab.logging_config import get_logger

logger = get_logger("complexes.groups")

Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class GroupAction:
    generators: Tuple[Permutation, ...]

    @classmethod
    def of(cls, generators: Iterable[Sequence[int]]) -> "GroupAction":
        return cls(tuple(tuple(int(v) for v in g) for g in generators))

    @classmethod
    def trivial(cls) -> "GroupAction":
        return cls(())

    def validate(self, X: SimplicialComplex) -> None:
        """Raise unless every generator is a simplicial automorphism of X."""
        n = X.n_vertices
        for k, g in enumerate(self.generators):
            if sorted(g) != list(range(n)):
                raise InvalidParams(f"generator {k} is not a permutation of {n} vertices")
            for level in X.cells:
                for cell in level:
                    if tuple(sorted(g[v] for v in cell)) not in X:
                        raise NotAnAutomorphism(k, cell)


def compose(g: Permutation, h: Permutation) -> Permutation:
    """g ∘ h."""
    return tuple(g[v] for v in h)


def enumerate_group(action: GroupAction, n_vertices: int, cap: int = GROUP_ORDER_CAP) -> List[Permutation]:
    """All elements of the generated group, identity first, in discovery order."""
    identity = tuple(range(n_vertices))
    seen: Set[Permutation] = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        element = queue.popleft()
        for g in action.generators:
            product = compose(g, element)
            if product not in seen:
                if len(seen) >= cap:
                    raise GroupTooLarge(cap)
                seen.add(product)
                order.append(product)
                queue.append(product)
    logger.debug(f"Enumerated group of order {len(order)}")
    return order


def is_admissible_subgroup(
    X: SimplicialComplex,
    action: GroupAction,
    *,
    vertices: Optional[Iterable[int]] = None,
    cap: int = GROUP_ORDER_CAP,
) -> bool:
    """
    Check dist(v, γv) > 2 for every nonidentity γ and every vertex v.

    For a generated ball of an infinite complex, pass ``vertices`` restricted to
    vertices whose 2-neighbourhood lies inside the ball; the answer is sound
    only for those.
    """
    action.validate(X)
    elements = enumerate_group(action, X.n_vertices, cap)[1:]
    checked = range(X.n_vertices) if vertices is None else list(vertices)
    close: Dict[int, Set[int]] = {}
    for v in checked:
        # dist(v, w) <= 2 exactly when w is within graph distance 2
        near = set(X.neighbors[v]) | {v}
        for u in X.neighbors[v]:
            near |= X.neighbors[u]
        close[v] = near
    for gamma in elements:
        for v in checked:
            if gamma[v] in close[v]:
                logger.debug(f"Vertex {v} moved only to {gamma[v]}")
                return False
    return True


@dataclass(frozen=True)
class QuotientResult:
    """
    Quotient of a complex by an admissible action.

    Attributes:
        quotient: the orbit complex.
        projection: vertex map cover -> quotient (a verified cover map).
        orbits: ``orbits[i][k]`` lists the i-cells of the cover in the k-th i-cell orbit.
        group_order: number of group elements.
    """

    quotient: SimplicialComplex
    projection: CoverMap
    orbits: Tuple[Tuple[Tuple[Cell, ...], ...], ...]
    group_order: int


def quotient_by_action(X: SimplicialComplex, action: GroupAction, cap: int = GROUP_ORDER_CAP) -> QuotientResult:
    """
    Form Γ\\X for an admissible Γ and verify the projection is a cover.

    Orbit representatives are the lexicographically least cells; quotient
    vertices are numbered by the order of their representatives.

    Raises:
        NotAdmissible: the distance criterion, C1 or C2 fails.
    """
    if not is_admissible_subgroup(X, action, cap=cap):
        raise NotAdmissible("distance", "some nonidentity element moves a vertex within distance 2")
    elements = enumerate_group(action, X.n_vertices, cap)

    for gamma in elements[1:]:
        fixed = [v for v in range(X.n_vertices) if gamma[v] == v]
        if fixed:
            raise NotAdmissible("C2", f"vertex {fixed[0]} has a nontrivial stabilizer")

    vertex_orbit: Dict[int, int] = {}
    representatives = sorted({min(g[v] for g in elements) for v in range(X.n_vertices)})
    label = {rep: k for k, rep in enumerate(representatives)}
    for v in range(X.n_vertices):
        vertex_orbit[v] = label[min(g[v] for g in elements)]

    orbits: List[Tuple[Tuple[Cell, ...], ...]] = []
    quotient_cells: Set[Cell] = set()
    for level in X.cells:
        by_key: Dict[Cell, Set[Cell]] = {}
        level_orbits: Dict[Cell, Tuple[Cell, ...]] = {}
        for cell in level:
            members = tuple(sorted({tuple(sorted(g[v] for v in cell)) for g in elements}))
            level_orbits[members[0]] = members
            key = tuple(sorted({vertex_orbit[v] for v in cell}))
            by_key.setdefault(key, set()).add(members[0])
        for key, reps in by_key.items():
            if len(reps) > 1:
                raise NotAdmissible("C1", f"orbits {sorted(reps)} share vertex orbits {key}")
            if len(key) != len(next(iter(reps))):
                raise NotAdmissible("C1", f"cell orbit {sorted(reps)} collapses to {key}")
            quotient_cells.add(key)
        orbits.append(tuple(level_orbits[rep] for rep in sorted(level_orbits)))

    quotient = build_complex(quotient_cells)
    vertex_map = tuple(vertex_orbit[v] for v in range(X.n_vertices))
    result = check_cover_map(vertex_map, X, quotient)
    if not result:
        raise NotAdmissible("cover", result.reason or "projection is not a cover")
    logger.info(
        f"Quotient by group of order {len(elements)}: f-vector {X.f_vector} -> {quotient.f_vector}"
    )
    return QuotientResult(quotient, CoverMap(X, quotient, vertex_map), tuple(orbits), len(elements))


def induced_cover(fine: QuotientResult, coarse: QuotientResult) -> CoverMap:
    """
    The cover Γ′\\X -> Γ\\X for nested groups Γ′ ≤ Γ acting on the same X.

    Raises:
        NotACover: the quotients are not nested.
    """
    mapping: Dict[int, int] = {}
    for v, w in enumerate(fine.projection.vertex_map):
        target = coarse.projection.vertex_map[v]
        if mapping.setdefault(w, target) != target:
            raise NotACover(f"fine orbit {w} meets coarse orbits {mapping[w]} and {target}")
    vertex_map = [mapping[w] for w in range(fine.quotient.n_vertices)]
    return CoverMap.checked(vertex_map, fine.quotient, coarse.quotient)
