"""
Operators by name, for the CLI and the pipeline.
"""
from typing import Callable, Dict, List, Optional, Sequence

from config import COMMUTATOR_TOL
from rlab.building.colored import ColoredComplex
from rlab.building.hecke import hecke_family
from rlab.complexes.complex import SimplicialComplex
from rlab.errors import InvalidParams, UnsupportedKind
from rlab.logging_config import get_logger
from rlab.operators.adjacency import adjacency, edge_adjacency
from rlab.operators.boundary import laplacian
from rlab.operators.chains import ChainOperator, OperatorFamily

logger = get_logger("operators.catalog")

Builder = Callable[[SimplicialComplex, int], ChainOperator]

BUILDERS: Dict[str, Builder] = {
    "adjacency": lambda X, i: adjacency(X, i),
    "edge-adjacency": lambda X, i: edge_adjacency(X),
    "laplacian": lambda X, i: laplacian(X, i, "total"),
    "laplacian-up": lambda X, i: laplacian(X, i, "up"),
    "laplacian-down": lambda X, i: laplacian(X, i, "down"),
}
OPERATOR_NAMES = tuple(BUILDERS) + ("hecke",)


def parse_operator_names(text: str) -> List[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise InvalidParams("no operator named")
    for name in names:
        if name not in OPERATOR_NAMES:
            raise UnsupportedKind(name)
    return names


def named_family(
    names: Sequence[str],
    X: SimplicialComplex,
    dim: int = 0,
    colored: Optional[ColoredComplex] = None,
    tol: float = COMMUTATOR_TOL,
) -> OperatorFamily:
    """
    The family of the named operators on i-cells, ``dim`` = i.

    ``hecke`` expands to a_1 … a_{d−1} and needs a colored complex. On
    vertices, forms and antiforms coincide and operators are placed on one
    basis.

    Raises:
        UnsupportedKind: unknown operator name.
        InvalidParams: ``hecke`` without a coloring, or mixed bases above dimension 0.
    """
    operators: List[ChainOperator] = []
    hecke = None
    for name in names:
        if name == "hecke":
            if colored is None:
                raise InvalidParams("hecke operators need a colored complex")
            hecke = hecke_family(colored)
            operators.extend(hecke.operators)
        elif name in BUILDERS:
            operators.append(BUILDERS[name](X, dim))
        else:
            raise UnsupportedKind(name)

    if len(names) == 1 and hecke is not None:
        return hecke.family
    basis = operators[0].source
    if basis.dim == 0:
        operators = [op if op.source == basis else ChainOperator(basis, basis, op.matrix, op.label) for op in operators]
    label = "+".join(names)
    family = OperatorFamily.build(label, operators, tol)
    logger.info(f"Family {label}: {len(family)} operator(s) on {family.basis.size} basis vectors")
    return family


def family_constructor(names: Sequence[str], dim: int = 0) -> Callable[[SimplicialComplex], OperatorFamily]:
    """A constructor X -> family for scans and cover checks on uncolored complexes."""
    return lambda X: named_family(names, X, dim)
