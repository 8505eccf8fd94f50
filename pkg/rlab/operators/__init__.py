from rlab.operators.adjacency import adjacency, edge_adjacency
from rlab.operators.boundary import boundary, chain_identity_defect, coboundary, coboundary_matrix, laplacian
from rlab.operators.chains import (
    BasisKind,
    ChainBasis,
    ChainOperator,
    OperatorFamily,
    zero_operator,
)
from rlab.operators.export import export_operator, load_operator
from rlab.operators.pushforward import orientation_direct_sum, pushforward, verify_naturality

__all__ = [
    "adjacency",
    "edge_adjacency",
    "boundary",
    "chain_identity_defect",
    "coboundary",
    "coboundary_matrix",
    "laplacian",
    "BasisKind",
    "ChainBasis",
    "ChainOperator",
    "OperatorFamily",
    "zero_operator",
    "export_operator",
    "load_operator",
    "orientation_direct_sum",
    "pushforward",
    "verify_naturality",
]
