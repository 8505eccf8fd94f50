"""
Colored adjacency (Hecke) operators a_1 … a_{d−1} on Ω_0⁺.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm

from config import NATURALITY_TOL
from rlab.building.colored import ColoredComplex
from rlab.logging_config import get_logger
from rlab.operators.chains import BasisKind, ChainBasis, ChainOperator, OperatorFamily

logger = get_logger("building.hecke")


def _norm(matrix) -> float:
    return float(sparse_norm(matrix)) if matrix.nnz else 0.0


@dataclass
class HeckeFamily:
    """
    The Hecke operators of a colored complex with their verified relations.

    Attributes:
        colored: The colored complex.
        family: a_1 … a_{d−1} as an operator family on Ω_0⁺.
        adjoint_pairs_exact: a_i transposed equals a_{d−i} entrywise.
        checked_rows: Rows on which the commutators were measured; ``None``
            means all rows.
        boundary_affected: The complex is a truncated ball.
    """

    colored: ColoredComplex
    family: OperatorFamily
    adjoint_pairs_exact: bool
    checked_rows: Optional[Set[int]] = None
    boundary_affected: bool = False
    warnings: List[str] = field(default_factory=list)

    @property
    def operators(self) -> List[ChainOperator]:
        return self.family.operators

    def __getitem__(self, i: int) -> ChainOperator:
        """a_i for 1 <= i <= d − 1."""
        return self.family.operators[i - 1]

    @property
    def commuting(self) -> bool:
        return self.family.commuting


def hecke_matrices(colored: ColoredComplex) -> List[sp.csr_matrix]:
    n = colored.complex.n_vertices
    d = colored.d
    rows: Dict[int, List[int]] = {i: [] for i in range(1, d)}
    cols: Dict[int, List[int]] = {i: [] for i in range(1, d)}
    for (u, v), color in sorted(colored.edge_colors.items()):
        rows[color % d].append(u)
        cols[color % d].append(v)
    return [
        sp.csr_matrix((np.ones(len(rows[i])), (rows[i], cols[i])), shape=(n, n)) for i in range(1, d)
    ]


def hecke_family(colored: ColoredComplex, tol: float = NATURALITY_TOL) -> HeckeFamily:
    """
    Assemble a_i with (a_i φ)(x) = Σ φ(y) over y with edge color C(x, y) = i.

    Commutators and normality are measured on all rows of a finite complex
    and on the core rows of a generated ball, where they are exact.

    Raises:
        ColoringInconsistent: the coloring is invalid.
    """
    colored.validate()
    d = colored.d
    matrices = hecke_matrices(colored)
    basis = ChainBasis.of(colored.complex, 0, BasisKind.ANTIFORMS)
    operators = [ChainOperator(basis, basis, m, f"a{i}") for i, m in enumerate(matrices, start=1)]

    adjoint_exact = all(
        (matrices[i - 1].T != matrices[d - i - 1]).nnz == 0 for i in range(1, d)
    )
    rows = sorted(colored.ball.core) if colored.ball is not None else None
    restrict = (lambda m: m[rows, :]) if rows is not None else (lambda m: m)

    commutators: Dict[Tuple[int, int], float] = {}
    for a, b in combinations(range(len(matrices)), 2):
        product = matrices[a] @ matrices[b] - matrices[b] @ matrices[a]
        commutators[(a, b)] = _norm(restrict(product))
    normality: List[float] = []
    for m in matrices:
        adjoint = m.T.tocsr()
        normality.append(_norm(restrict(m @ adjoint - adjoint @ m)))
    commuting = all(value <= tol for value in commutators.values())
    normal = all(value <= tol for value in normality)
    family = OperatorFamily(f"hecke(d={d})", operators, commuting, normal, commutators, normality)

    warnings = []
    if not adjoint_exact:
        warnings.append("a_i* = a_{d-i} fails")
    if not commuting:
        warnings.append("Hecke operators do not commute on the checked rows")
    if colored.boundary_affected:
        warnings.append(
            f"ball of radius {colored.ball.radius}: frontier rows are truncated; relations checked on {len(rows)} core rows"
        )
    for message in warnings:
        logger.warning(message)
    logger.info(f"Hecke family: {d - 1} operators on {basis.size} vertices")
    return HeckeFamily(
        colored,
        family,
        adjoint_exact,
        set(rows) if rows is not None else None,
        colored.boundary_affected,
        warnings,
    )
