"""
Chain spaces and linear operators between them.

Three bases are supported for the i-dimensional chain spaces of a complex:

- ``forms`` (Ω_i⁻): one basis vector per i-cell, representing the sorted-order
  orientation; the opposite orientation carries the negated value.
- ``antiforms`` (Ω_i⁺): one basis vector per i-cell, orientation-invariant.
- ``oriented-full`` (Ω_i^±): one basis vector per oriented i-cell; the
  sorted-order orientations come first, then the opposite ones.

Inner products are diagonal in every basis. Forms and antiforms see each cell
through both orientations, so their Gram factor is 2; Ω_0 carries the factor 2
directly. Only Ω_i^± for i > 0 has Gram factor 1.
"""
from dataclasses import dataclass
from functools import cached_property
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm

from config import COMMUTATOR_TOL
from rlab.complexes.complex import Cell, SimplicialComplex
from rlab.errors import DimensionOutOfRange, InvalidParams
from rlab.logging_config import get_logger

logger = get_logger("operators.chains")


class BasisKind(str, Enum):
    FORMS = "forms"
    ANTIFORMS = "antiforms"
    FULL = "oriented-full"


@dataclass(frozen=True)
class ChainBasis:
    kind: BasisKind
    dim: int
    cells: Tuple[Cell, ...]

    @classmethod
    def of(cls, X: SimplicialComplex, i: int, kind: BasisKind = BasisKind.FORMS) -> "ChainBasis":
        if not 0 <= i <= X.dimension:
            raise DimensionOutOfRange(i, X.dimension)
        return cls(BasisKind(kind), i, tuple(X.cells[i]))

    @property
    def oriented(self) -> bool:
        return self.kind == BasisKind.FULL and self.dim > 0

    @property
    def size(self) -> int:
        return 2 * len(self.cells) if self.oriented else len(self.cells)

    @property
    def gram(self) -> float:
        """Scalar Gram factor of the basis."""
        return 1.0 if self.oriented else 2.0

    @cached_property
    def positions(self) -> Dict[Cell, int]:
        return {cell: k for k, cell in enumerate(self.cells)}

    def element(self, k: int) -> Tuple[Cell, int]:
        """Cell and orientation sign of the k-th basis vector."""
        if self.oriented and k >= len(self.cells):
            return self.cells[k - len(self.cells)], -1
        return self.cells[k], 1

    def index(self, cell: Cell, orientation: int = 1) -> int:
        k = self.positions[cell]
        if self.oriented and orientation < 0:
            return k + len(self.cells)
        return k

    def inner(self, u: np.ndarray, v: np.ndarray) -> complex:
        """⟨u, v⟩ = g · Σ u conj(v)."""
        return complex(self.gram * np.vdot(v, u))

    def manifest(self) -> dict:
        """JSON-ready cell <-> index listing."""
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "gram": self.gram,
            "basis": [
                {"index": k, "cell": list(cell), "orientation": sign}
                for k, (cell, sign) in enumerate(self.element(k) for k in range(self.size))
            ],
        }


class ChainOperator:
    """
    A linear map between chain bases, stored as a complex CSR matrix.

    The adjoint is taken with respect to the declared inner products:
    ``A* = (g_target / g_source) · Aᴴ``.
    """

    def __init__(self, source: ChainBasis, target: ChainBasis, matrix, label: str = ""):
        matrix = sp.csr_matrix(matrix, dtype=np.complex128)
        if matrix.shape != (target.size, source.size):
            raise InvalidParams(
                f"matrix shape {matrix.shape} does not match bases ({target.size}, {source.size})"
            )
        matrix.sort_indices()
        self.source = source
        self.target = target
        self.matrix = matrix
        self.label = label
        self._adjoint: Optional["ChainOperator"] = None

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    @property
    def adjoint(self) -> "ChainOperator":
        if self._adjoint is None:
            scale = self.target.gram / self.source.gram
            dual = ChainOperator(self.target, self.source, scale * self.matrix.conj().T, f"{self.label}*")
            dual._adjoint = self
            self._adjoint = dual
        return self._adjoint

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def __call__(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def __matmul__(self, other: "ChainOperator") -> "ChainOperator":
        if other.target != self.source:
            raise InvalidParams(f"cannot compose {self.label} after {other.label}: basis mismatch")
        return ChainOperator(other.source, self.target, self.matrix @ other.matrix, f"{self.label}∘{other.label}")

    def __add__(self, other: "ChainOperator") -> "ChainOperator":
        self._check_same(other)
        return ChainOperator(self.source, self.target, self.matrix + other.matrix, f"{self.label}+{other.label}")

    def __sub__(self, other: "ChainOperator") -> "ChainOperator":
        self._check_same(other)
        return ChainOperator(self.source, self.target, self.matrix - other.matrix, f"{self.label}-{other.label}")

    def scaled(self, factor: complex, label: Optional[str] = None) -> "ChainOperator":
        return ChainOperator(self.source, self.target, factor * self.matrix, label or f"{factor}·{self.label}")

    def _check_same(self, other: "ChainOperator") -> None:
        if other.source != self.source or other.target != self.target:
            raise InvalidParams(f"operators {self.label} and {other.label} act on different bases")

    def norm(self) -> float:
        return float(sparse_norm(self.matrix)) if self.matrix.nnz else 0.0

    def is_self_adjoint(self, tol: float = COMMUTATOR_TOL) -> bool:
        return self.source == self.target and (self - self.adjoint).norm() <= tol

    def __repr__(self) -> str:
        return f"ChainOperator({self.label!r}, {self.target.kind.value}{self.target.dim} <- {self.source.kind.value}{self.source.dim}, shape={self.shape})"


def zero_operator(source: ChainBasis, target: ChainBasis, label: str = "0") -> ChainOperator:
    return ChainOperator(source, target, sp.csr_matrix((target.size, source.size)), label)


@dataclass
class OperatorFamily:
    """
    Operators sharing one basis, with verified commutation and normality.

    ``commuting`` and ``normal`` are only set from measured defects.
    """

    label: str
    operators: List[ChainOperator]
    commuting: bool
    normal: bool
    commutator_defects: Dict[Tuple[int, int], float]
    normality_defects: List[float]

    @classmethod
    def build(cls, label: str, operators: Sequence[ChainOperator], tol: float = COMMUTATOR_TOL) -> "OperatorFamily":
        ops = list(operators)
        if not ops:
            raise InvalidParams("an operator family needs at least one operator")
        basis = ops[0].source
        for op in ops:
            if op.source != basis or op.target != basis:
                raise InvalidParams(f"operator {op.label} does not act on the family basis")
        commutators = {}
        for a, b in combinations(range(len(ops)), 2):
            product = ops[a].matrix @ ops[b].matrix - ops[b].matrix @ ops[a].matrix
            commutators[(a, b)] = float(sparse_norm(product)) if product.nnz else 0.0
        normality = []
        for op in ops:
            adj = op.adjoint.matrix
            defect = op.matrix @ adj - adj @ op.matrix
            normality.append(float(sparse_norm(defect)) if defect.nnz else 0.0)
        commuting = all(v <= tol for v in commutators.values())
        normal = all(v <= tol for v in normality)
        if not commuting:
            logger.warning(f"Family {label} is not commutative; joint spectrum unavailable")
        return cls(label, ops, commuting, normal, commutators, normality)

    @property
    def basis(self) -> ChainBasis:
        return self.operators[0].source

    def __len__(self) -> int:
        return len(self.operators)
