from rlab.building.ball import ball_size_bound, building_ball, regular_tree_ball
from rlab.building.colored import (
    BallInfo,
    ColoredComplex,
    colored_from_complex,
    colored_quotient,
    derive_vertex_colors,
    load_colored_complex,
    save_colored_complex,
)
from rlab.building.hecke import HeckeFamily, hecke_family, hecke_matrices
from rlab.building.lattice import (
    LatticeClass,
    LocalFieldParams,
    canonicalize,
    gaussian_binomial,
    interior_degree,
    neighbors,
    subspaces,
)

__all__ = [
    "ball_size_bound",
    "building_ball",
    "regular_tree_ball",
    "BallInfo",
    "ColoredComplex",
    "colored_from_complex",
    "colored_quotient",
    "derive_vertex_colors",
    "load_colored_complex",
    "save_colored_complex",
    "HeckeFamily",
    "hecke_family",
    "hecke_matrices",
    "LatticeClass",
    "LocalFieldParams",
    "canonicalize",
    "gaussian_binomial",
    "interior_degree",
    "neighbors",
    "subspaces",
]
