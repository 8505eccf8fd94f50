"""
Cell-adjacency operators on antiforms.
"""
from itertools import combinations, permutations
from typing import Optional

import numpy as np
import scipy.sparse as sp

from rlab.complexes.complex import SimplicialComplex
from rlab.errors import DimensionOutOfRange, IndexConstraintViolated
from rlab.logging_config import get_logger
from rlab.operators.chains import BasisKind, ChainBasis, ChainOperator

logger = get_logger("operators.adjacency")


def adjacency(X: SimplicialComplex, i: int, j: Optional[int] = None) -> ChainOperator:
    """
    The operator a_{i;j} on Ω_i⁺.

    (a_{i;j}φ)(x) sums φ(y) over i-cells y ≠ x with x ∪ y a j-cell. Every
    such pair lies in exactly one j-cell, so the matrix is assembled by
    walking the j-cells and pairing their i-faces.

    Args:
        X: The complex.
        i: Cell dimension of the functions.
        j: Dimension of the joining cell; defaults to i + 1.

    Raises:
        IndexConstraintViolated: unless 0 <= i < j <= 2i + 1.
        DimensionOutOfRange: j exceeds the dimension of X.
    """
    if j is None:
        j = i + 1
    if not 0 <= i < j <= 2 * i + 1:
        raise IndexConstraintViolated(i, j)
    if j > X.dimension:
        raise DimensionOutOfRange(j, X.dimension)

    index = X.index[i]
    rows, cols = [], []
    for z in X.cells[j]:
        members = set(z)
        for x, y in permutations(combinations(z, i + 1), 2):
            if members.issubset(x + y):
                rows.append(index[x])
                cols.append(index[y])
    n = len(X.cells[i])
    matrix = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    basis = ChainBasis.of(X, i, BasisKind.ANTIFORMS)
    logger.debug(f"a_{i};{j}: {matrix.nnz} nonzeros on {n} cells")
    return ChainOperator(basis, basis, matrix, f"a{i};{j}")


def edge_adjacency(X: SimplicialComplex) -> ChainOperator:
    """
    Line-graph operator on Ω_1⁺: edges are adjacent when they share one vertex.

    On a k-regular tree its spectrum is {μ + k − 2 : μ in the vertex
    spectrum} ∪ {−2}.
    """
    if X.dimension < 1:
        raise DimensionOutOfRange(1, X.dimension)
    index = X.index[1]
    rows, cols = [], []
    for v in range(X.n_vertices):
        star = X.cofaces((v,), 1)
        for e, f in permutations(star, 2):
            rows.append(index[e])
            cols.append(index[f])
    n = len(X.cells[1])
    matrix = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    basis = ChainBasis.of(X, 1, BasisKind.ANTIFORMS)
    return ChainOperator(basis, basis, matrix, "edge-adjacency")
