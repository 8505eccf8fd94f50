from rlab.complexes.complex import Cell, SimplicialComplex, as_cell, ball, build_complex, disjoint_union, dist
from rlab.complexes.covers import CoverCheck, CoverMap, check_cover_map, permutation_sign
from rlab.complexes.groups import (
    GroupAction,
    QuotientResult,
    enumerate_group,
    induced_cover,
    is_admissible_subgroup,
    quotient_by_action,
)

__all__ = [
    "Cell",
    "SimplicialComplex",
    "as_cell",
    "ball",
    "build_complex",
    "disjoint_union",
    "dist",
    "CoverCheck",
    "CoverMap",
    "check_cover_map",
    "permutation_sign",
    "GroupAction",
    "QuotientResult",
    "enumerate_group",
    "induced_cover",
    "is_admissible_subgroup",
    "quotient_by_action",
]
