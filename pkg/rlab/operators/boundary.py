"""
Boundary, coboundary and Laplacians on forms.

For a sorted (i+1)-cell z = [w_0 … w_{i+1}] and its face x = z − w_j, the
coboundary entry is (−1)^j. Moving w_j to the front of z takes j
transpositions, so the boundary ∂_{i+1}ψ[v_0…v_i] = Σ_v ψ[v v_0…v_i] has the
transposed matrix. Both form bases carry Gram factor 2, hence δ_i* = ∂_{i+1}.
"""
from typing import Literal

import numpy as np
import scipy.sparse as sp

from rlab.complexes.complex import SimplicialComplex
from rlab.errors import DimensionOutOfRange, InvalidParams
from rlab.logging_config import get_logger
from rlab.operators.chains import BasisKind, ChainBasis, ChainOperator, zero_operator

logger = get_logger("operators.boundary")

LaplacianVariant = Literal["up", "down", "total"]


def coboundary_matrix(X: SimplicialComplex, i: int) -> sp.csr_matrix:
    """Integer matrix of δ_i with rows indexed by (i+1)-cells, columns by i-cells."""
    if not 0 <= i < X.dimension:
        raise DimensionOutOfRange(i + 1, X.dimension)
    rows, cols, vals = [], [], []
    faces = X.index[i]
    for r, cell in enumerate(X.cells[i + 1]):
        for j in range(len(cell)):
            rows.append(r)
            cols.append(faces[cell[:j] + cell[j + 1:]])
            vals.append(-1 if j % 2 else 1)
    shape = (len(X.cells[i + 1]), len(X.cells[i]))
    return sp.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=shape)


def coboundary(X: SimplicialComplex, i: int) -> ChainOperator:
    """δ_i : Ω_i⁻ -> Ω_{i+1}⁻."""
    source = ChainBasis.of(X, i, BasisKind.FORMS)
    target = ChainBasis.of(X, i + 1, BasisKind.FORMS) if i + 1 <= X.dimension else None
    if target is None:
        raise DimensionOutOfRange(i + 1, X.dimension)
    op = ChainOperator(source, target, coboundary_matrix(X, i), f"δ{i}")
    # wire the adjoint to the boundary so both names refer to one pair
    op.adjoint.label = f"∂{i + 1}"
    return op


def boundary(X: SimplicialComplex, k: int) -> ChainOperator:
    """∂_k : Ω_k⁻ -> Ω_{k−1}⁻ for 1 <= k <= dim X."""
    if not 1 <= k <= X.dimension:
        raise DimensionOutOfRange(k, X.dimension)
    return coboundary(X, k - 1).adjoint


def chain_identity_defect(X: SimplicialComplex, i: int) -> int:
    """
    Number of nonzero entries of δ_{i+1}δ_i over the integers.

    ∂_{i+1}∂_{i+2} is the transpose, so zero here settles both identities.
    """
    product = coboundary_matrix(X, i + 1) @ coboundary_matrix(X, i)
    product.eliminate_zeros()
    return int(product.nnz)


def laplacian(X: SimplicialComplex, i: int, variant: LaplacianVariant = "total") -> ChainOperator:
    """
    Upper, lower or total Laplacian on Ω_i⁻.

    Δ_i⁺ = ∂_{i+1}δ_i (zero at the top dimension), Δ_i⁻ = δ_{i−1}∂_i
    (zero at i = 0), Δ_i = Δ_i⁺ + Δ_i⁻.
    """
    if variant not in ("up", "down", "total"):
        raise InvalidParams(f"unknown Laplacian variant {variant!r}")
    basis = ChainBasis.of(X, i, BasisKind.FORMS)
    upper = zero_operator(basis, basis)
    lower = zero_operator(basis, basis)
    if variant in ("up", "total") and i < X.dimension:
        delta = coboundary(X, i)
        upper = delta.adjoint @ delta
    if variant in ("down", "total") and i > 0:
        delta = coboundary(X, i - 1)
        lower = delta @ delta.adjoint
    if variant == "up":
        result = upper
    elif variant == "down":
        result = lower
    else:
        result = upper + lower
    sign = {"up": "+", "down": "-", "total": ""}[variant]
    result.label = f"Δ{i}{sign}"
    logger.debug(f"Assembled {result.label} on {basis.size} cells")
    return result
