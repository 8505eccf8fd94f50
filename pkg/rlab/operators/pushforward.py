"""
Pushforward along cover maps and the naturality check.
"""
from typing import Callable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm

from config import NATURALITY_TOL
from rlab.complexes.complex import SimplicialComplex
from rlab.complexes.covers import CoverMap, check_cover_map
from rlab.errors import InvalidParams, NotACover, RlabError
from rlab.logging_config import get_logger
from rlab.operators.chains import BasisKind, ChainBasis, ChainOperator

logger = get_logger("operators.pushforward")

OperatorConstructor = Callable[[SimplicialComplex, int], ChainOperator]


def pushforward(f: CoverMap, i: int, kind: BasisKind = BasisKind.FORMS) -> ChainOperator:
    """
    f_* on i-chains: the linear extension of e_x -> e_{f(x)}.

    On forms the image picks up the sign of the permutation taking the
    mapped vertices into sorted order; antiforms carry no sign.

    Raises:
        NotACover: ``f`` fails the cover-map check.
    """
    result = check_cover_map(f.vertex_map, f.source, f.target)
    if not result:
        raise NotACover(result.reason or "unknown")
    kind = BasisKind(kind)
    source = ChainBasis.of(f.source, i, kind)
    target = ChainBasis.of(f.target, i, kind)

    rows, cols, vals = [], [], []
    for col in range(source.size):
        cell, orientation = source.element(col)
        image, sign = f.image(cell)
        if kind == BasisKind.ANTIFORMS:
            rows.append(target.index(image))
            vals.append(1)
        elif kind == BasisKind.FORMS:
            rows.append(target.index(image))
            vals.append(sign)
        else:
            rows.append(target.index(image, orientation * sign))
            vals.append(1)
        cols.append(col)
    matrix = sp.csr_matrix((np.array(vals, dtype=float), (rows, cols)), shape=(target.size, source.size))
    return ChainOperator(source, target, matrix, f"f*{i}")


def verify_naturality(
    constructor: OperatorConstructor,
    f: CoverMap,
    i: int,
    tol: float = NATURALITY_TOL,
) -> bool:
    """
    Check f_* ∘ a_X = a_Y ∘ f_* for the operator built by ``constructor(X, i)``.

    The pushforwards are taken in the operator's own basis kind and at its
    source and target dimensions, so coboundaries are covered as well.
    """
    try:
        upstairs = constructor(f.source, i)
        downstairs = constructor(f.target, i)
        if upstairs.source.kind != downstairs.source.kind:
            raise InvalidParams("constructor changes basis kind between complexes")
        push_source = pushforward(f, upstairs.source.dim, upstairs.source.kind)
        push_target = pushforward(f, upstairs.target.dim, upstairs.target.kind)
    except RlabError as e:
        logger.warning(f"Naturality check not applicable: {e}")
        return False
    defect = push_target.matrix @ upstairs.matrix - downstairs.matrix @ push_source.matrix
    value = float(sparse_norm(defect)) if defect.nnz else 0.0
    logger.debug(f"Naturality defect of {upstairs.label}: {value:.3e}")
    return value <= tol


def orientation_direct_sum(op_plus: ChainOperator, op_minus: ChainOperator) -> ChainOperator:
    """
    Assemble A ⊕ B on Ω_i^± from A on Ω_i⁺ and B on Ω_i⁻.

    In the oriented basis (all positive orientations, then all negative ones)
    the sum is [[S, T], [T, S]] with S = (A + B)/2, T = (A − B)/2.
    """
    a, b = op_plus.source, op_minus.source
    if a.kind != BasisKind.ANTIFORMS or b.kind != BasisKind.FORMS:
        raise InvalidParams("expected an antiform operator and a form operator")
    if op_plus.target != a or op_minus.target != b or a.cells != b.cells:
        raise InvalidParams("operators must be endomorphisms of the same i-cells")
    if a.dim == 0:
        raise InvalidParams("0-cells have a single orientation; Ω_0^± is Ω_0⁺")
    half_sum = (op_plus.matrix + op_minus.matrix) / 2
    half_diff = (op_plus.matrix - op_minus.matrix) / 2
    matrix = sp.bmat([[half_sum, half_diff], [half_diff, half_sum]], format="csr")
    basis = ChainBasis(BasisKind.FULL, a.dim, a.cells)
    return ChainOperator(basis, basis, matrix, f"{op_plus.label}⊕{op_minus.label}")
