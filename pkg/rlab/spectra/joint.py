"""
Joint spectra of commuting normal operator families.

A random self-adjoint combination of the family is diagonalized; clusters
of nearly equal eigenvalues are refined recursively with fresh combinations
restricted to the cluster. The joint eigenvalue tuples are the diagonals of
the family in the final unitary basis.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse.linalg import eigsh

from config import CLUSTER_GAP, COMMUTATOR_TOL, RLAB_SEED
from rlab.complexes.complex import SimplicialComplex, disjoint_union
from rlab.errors import InvalidParams, NotCommuting, NotNormal, ReconstructionFailed
from rlab.logging_config import get_logger
from rlab.operators.chains import ChainOperator, OperatorFamily

logger = get_logger("spectra.joint")

FamilyLike = Union[OperatorFamily, Sequence[ChainOperator], ChainOperator]
FamilyConstructor = Callable[[SimplicialComplex], FamilyLike]

SORT_DECIMALS = 9
MAX_REFINEMENTS = 8


def _clean(values: np.ndarray) -> np.ndarray:
    """Zero out round-off in real and imaginary parts."""
    re = np.where(np.abs(values.real) < 1e-12, 0.0, values.real)
    im = np.where(np.abs(values.imag) < 1e-12, 0.0, values.imag)
    return re + 1j * im


def _lexicographic(points: np.ndarray) -> np.ndarray:
    """Order of rows sorted by (re_0, im_0, re_1, im_1, …) after rounding."""
    if len(points) == 0:
        return np.arange(0)
    keys = []
    for k in range(points.shape[1]):
        keys += [np.round(points[:, k].real, SORT_DECIMALS), np.round(points[:, k].imag, SORT_DECIMALS)]
    return np.lexsort(keys[::-1])


@dataclass
class SpectrumSet:
    """
    A multiset of points in ℂ^t, one row per eigenvector, sorted lexicographically.

    Attributes:
        points: Complex array of shape (n, t).
        labels: Operator labels per coordinate.
        complete: Multiplicities sum to the ambient dimension.
    """

    points: np.ndarray
    labels: Tuple[str, ...] = ()
    complete: bool = True
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.complex128)
        if points.ndim == 1:
            points = points[:, None]
        points = _clean(points)
        self.points = points[_lexicographic(points)]

    @property
    def arity(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def self_adjoint(self) -> bool:
        return bool(np.all(self.points.imag == 0))

    def multiset(self, decimals: int = SORT_DECIMALS) -> List[Tuple[Tuple[complex, ...], int]]:
        """Distinct points (rounded) with multiplicities, in sorted order."""
        groups: List[Tuple[Tuple[complex, ...], int]] = []
        for row in self.points:
            key = tuple(complex(round(z.real, decimals), round(z.imag, decimals)) for z in row)
            if groups and groups[-1][0] == key:
                groups[-1] = (key, groups[-1][1] + 1)
            else:
                groups.append((key, 1))
        return groups

    def project(self, k: int) -> "SpectrumSet":
        """Coordinate k: the spectrum of the k-th operator."""
        label = (self.labels[k],) if self.labels else ()
        return SpectrumSet(self.points[:, k], label, self.complete)

    def union(self, other: "SpectrumSet") -> "SpectrumSet":
        if other.arity != self.arity:
            raise InvalidParams("cannot unite spectra of different arity")
        return SpectrumSet(np.vstack([self.points, other.points]), self.labels, self.complete and other.complete)

    def direct_sum(self, other: "SpectrumSet") -> "SpectrumSet":
        """Joint spectrum of (A ⊕ 0, 0 ⊕ B): points (λ, 0) and (0, μ)."""
        left = np.hstack([self.points, np.zeros((len(self), other.arity))])
        right = np.hstack([np.zeros((len(other), self.arity)), other.points])
        return SpectrumSet(np.vstack([left, right]), self.labels + other.labels)

    def distances(self, point: Sequence[complex]) -> np.ndarray:
        """Max-coordinate distance from every point to ``point``."""
        target = np.asarray(point, dtype=np.complex128).reshape(1, -1)
        return np.max(np.abs(self.points - target), axis=1)

    def contains(self, point: Sequence[complex], tol: float = COMMUTATOR_TOL) -> bool:
        return len(self) > 0 and float(self.distances(point).min()) <= tol


def as_operator_list(family: FamilyLike) -> List[ChainOperator]:
    if isinstance(family, ChainOperator):
        return [family]
    if isinstance(family, OperatorFamily):
        return list(family.operators)
    if hasattr(family, "family") and isinstance(family.family, OperatorFamily):
        return list(family.family.operators)
    return list(family)


def _hermitian_combination(matrices: Sequence[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    n = matrices[0].shape[0]
    combination = np.zeros((n, n), dtype=np.complex128)
    for A in matrices:
        a, b = rng.standard_normal(2)
        adjoint = A.conj().T
        combination += a * (A + adjoint) / 2 + b * (A - adjoint) / 2j
    return (combination + combination.conj().T) / 2


def _diagonalizing_basis(
    matrices: Sequence[np.ndarray],
    rng: np.random.Generator,
    gap: float,
    depth: int = 0,
) -> np.ndarray:
    """Unitary U with Uᴴ A U diagonal for every A in the commuting normal family."""
    n = matrices[0].shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=np.complex128)
    values, vectors = np.linalg.eigh(_hermitian_combination(matrices, rng))
    scale = max(1.0, float(np.max(np.abs(values))))
    breaks = np.flatnonzero(np.diff(values) > gap * scale) + 1
    bounds = [0, *breaks.tolist(), n]
    if depth >= MAX_REFINEMENTS:
        return vectors
    basis = vectors.astype(np.complex128)
    for start, stop in zip(bounds[:-1], bounds[1:]):
        if stop - start < 2:
            continue
        block = vectors[:, start:stop]
        restricted = [block.conj().T @ A @ block for A in matrices]
        spread = max(float(np.max(np.abs(B - np.diag(np.diag(B))))) for B in restricted)
        if spread <= gap * scale:
            continue
        inner = _diagonalizing_basis(restricted, rng, gap, depth + 1)
        basis[:, start:stop] = block @ inner
    return basis


def joint_eigenvalues(
    matrices: Sequence[np.ndarray],
    *,
    tol: float = COMMUTATOR_TOL,
    gap: float = CLUSTER_GAP,
    seed: int = RLAB_SEED,
) -> np.ndarray:
    """
    Joint eigenvalue tuples of dense commuting normal matrices, shape (n, t).

    The matrices must be normal for the standard inner product.

    Raises:
        NotCommuting: a commutator norm exceeds ``tol``.
        NotNormal: an operator fails normality within ``tol``.
        ReconstructionFailed: ‖A − U D Uᴴ‖ exceeds ``tol`` relative to ‖A‖.
    """
    mats = [np.asarray(A, dtype=np.complex128) for A in matrices]
    if not mats:
        raise InvalidParams("an empty family has no joint spectrum")
    n = mats[0].shape[0]
    for k, A in enumerate(mats):
        if A.shape != (n, n):
            raise InvalidParams(f"operator {k} has shape {A.shape}, expected {(n, n)}")
        defect = float(np.linalg.norm(A @ A.conj().T - A.conj().T @ A))
        if defect > tol * max(1.0, float(np.linalg.norm(A)) ** 2):
            raise NotNormal(k, defect)
    for a, b in combinations(range(len(mats)), 2):
        defect = float(np.linalg.norm(mats[a] @ mats[b] - mats[b] @ mats[a]))
        if defect > tol * max(1.0, float(np.linalg.norm(mats[a]) * np.linalg.norm(mats[b]))):
            raise NotCommuting((a, b), defect)
    if n == 0:
        return np.zeros((0, len(mats)), dtype=np.complex128)

    if len(mats) == 1 and np.allclose(mats[0], mats[0].conj().T, atol=tol):
        values, U = np.linalg.eigh((mats[0] + mats[0].conj().T) / 2)
        points = values.astype(np.complex128)[:, None]
    else:
        rng = np.random.default_rng(seed)
        U = _diagonalizing_basis(mats, rng, gap)
        points = np.column_stack([np.diag(U.conj().T @ A @ U) for A in mats])

    for k, A in enumerate(mats):
        residual = float(np.linalg.norm(A - (U * points[:, k]) @ U.conj().T))
        if residual > tol * max(1.0, float(np.linalg.norm(A))):
            raise ReconstructionFailed(k, residual)
    return points


def joint_spectrum(family: FamilyLike, *, tol: float = COMMUTATOR_TOL, seed: int = RLAB_SEED) -> SpectrumSet:
    """
    Joint spectrum of a commuting family of normal operators on one basis.

    Bases with a scalar Gram factor make the operator adjoint the conjugate
    transpose, so unitary diagonalization in coordinates is valid.
    """
    operators = as_operator_list(family)
    if not operators:
        raise InvalidParams("an empty family has no joint spectrum")
    basis = operators[0].source
    for op in operators:
        if op.source != basis or op.target != basis:
            raise InvalidParams(f"operator {op.label} does not act on the family basis")
    points = joint_eigenvalues([op.dense() for op in operators], tol=tol, seed=seed)
    spectrum = SpectrumSet(points, tuple(op.label for op in operators))
    logger.info(f"Joint spectrum of {len(operators)} operators: {len(spectrum)} points")
    return spectrum


def per_operator_spectra(family: FamilyLike) -> List[SpectrumSet]:
    """Separate spectra, for families that do not commute."""
    spectra = []
    for op in as_operator_list(family):
        matrix = op.dense()
        if np.allclose(matrix, matrix.conj().T):
            values = np.linalg.eigvalsh((matrix + matrix.conj().T) / 2).astype(np.complex128)
        else:
            values = np.linalg.eigvals(matrix)
        spectra.append(SpectrumSet(values, (op.label,)))
    return spectra


def extreme_eigenvalues(op: ChainOperator, k: int = 6, which: str = "LM") -> np.ndarray:
    """
    The k extreme eigenvalues of a self-adjoint operator by Lanczos iteration.

    Falls back to dense diagonalization when k is close to the dimension.
    """
    n = op.shape[0]
    if not op.is_self_adjoint():
        raise InvalidParams(f"{op.label} is not self-adjoint")
    if k <= 0:
        raise InvalidParams("k must be positive")
    if k >= n - 1:
        values = np.linalg.eigvalsh(op.dense())
    else:
        values = eigsh(op.matrix, k=k, which=which, return_eigenvectors=False, v0=np.ones(n))
        values = np.real(values)
    order = np.argsort(-np.abs(values) if which == "LM" else -values, kind="stable")
    return np.real(values)[order][:k]


def match_multisets(first: SpectrumSet, second: SpectrumSet, tol: float = COMMUTATOR_TOL) -> bool:
    """
    Whether every point of ``first`` pairs with a distinct point of ``second``.

    Equal sizes make this multiset equality. Pairing is an optimal
    assignment on the max-coordinate distance.
    """
    if first.arity != second.arity or len(first) > len(second):
        return False
    if len(first) == 0:
        return True
    cost = np.max(np.abs(first.points[:, None, :] - second.points[None, :, :]), axis=2)
    rows, cols = linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max())
    logger.debug(f"Multiset match: worst pairing distance {worst:.3e}")
    return worst <= tol


def direct_sum_spectrum_check(
    X: SimplicialComplex,
    Y: SimplicialComplex,
    constructor: FamilyConstructor,
    *,
    union_constructor: Optional[FamilyConstructor] = None,
    tol: float = COMMUTATOR_TOL,
) -> bool:
    """
    The spectrum of X ⊔ Y equals the multiset union of the spectra of X and Y.

    ``union_constructor`` builds the family on the disjoint union; it
    defaults to ``constructor``.
    """
    union = disjoint_union(X, Y)
    build = union_constructor or constructor
    combined = joint_spectrum(build(union), tol=tol)
    parts = joint_spectrum(constructor(X), tol=tol).union(joint_spectrum(constructor(Y), tol=tol))
    return len(combined) == len(parts) and match_multisets(combined, parts, tol)
