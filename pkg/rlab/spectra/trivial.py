"""
Trivial spectrum by collapsing operators onto color classes.

For an equitable partition with normalized class indicators P, the
collapsed operator PᵀAP acts on functions constant on classes; its
eigenvalues are eigenvalues of A with class-constant eigenvectors. The
colorings used are the reductions of the Z/d coloring modulo each divisor
of d; an uncolored graph uses its bipartition when it has one.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from config import COMMUTATOR_TOL, NATURALITY_TOL
from rlab.building.colored import ColoredComplex
from rlab.building.hecke import HeckeFamily, hecke_family
from rlab.complexes.complex import SimplicialComplex
from rlab.errors import InvalidParams, NotEquitable
from rlab.logging_config import get_logger
from rlab.operators.adjacency import adjacency
from rlab.spectra.joint import FamilyLike, SpectrumSet, as_operator_list, joint_eigenvalues

logger = get_logger("spectra.trivial")


@dataclass
class TrivialSpectrum:
    """
    Trivial points with the colorings that produced them.

    Attributes:
        points: Distinct tuples, shape (m, t).
        source: Description of the color quotients used.
        collapses: (number of classes, collapsed points) per coloring.
    """

    points: np.ndarray
    source: str
    collapses: List[Tuple[int, np.ndarray]]

    @property
    def arity(self) -> int:
        return self.points.shape[1]

    def as_spectrum(self) -> SpectrumSet:
        return SpectrumSet(self.points)

    def direct_sum(self, other: "TrivialSpectrum") -> "TrivialSpectrum":
        combined = self.as_spectrum().direct_sum(other.as_spectrum())
        return TrivialSpectrum(combined.points, f"{self.source} ⊕ {other.source}", [])

    def contained_in(self, spectrum: SpectrumSet, tol: float = COMMUTATOR_TOL) -> bool:
        return all(spectrum.contains(point, tol) for point in self.points)


def _distinct(points: np.ndarray, decimals: int = 9) -> np.ndarray:
    if len(points) == 0:
        return points
    keys = np.round(points.real, decimals) + 1j * np.round(points.imag, decimals)
    _, first = np.unique(keys.view(np.float64).reshape(len(points), -1), axis=0, return_index=True)
    return SpectrumSet(points[np.sort(first)]).points


def collapse(matrices: Sequence[np.ndarray], classes: Sequence[int], tol: float = NATURALITY_TOL) -> List[np.ndarray]:
    """
    PᵀAP for every A, checking that the partition is equitable for A and A*.

    Raises:
        NotEquitable: naming the class pair and operator.
    """
    labels = np.asarray(classes)
    values = sorted(set(labels.tolist()))
    indicator = np.zeros((len(labels), len(values)))
    for c, value in enumerate(values):
        indicator[labels == value, c] = 1.0
    sizes = indicator.sum(axis=0)
    P = indicator / np.sqrt(sizes)
    collapsed = []
    for k, A in enumerate(matrices):
        for M in (A, A.conj().T):
            sums = M @ indicator
            for c in range(len(values)):
                block = sums[labels == values[c]]
                spread = np.max(np.abs(block - block[0]), axis=0)
                bad = np.flatnonzero(spread > tol)
                if bad.size:
                    raise NotEquitable((values[c], values[int(bad[0])]), k)
        collapsed.append(P.T @ A @ P)
    return collapsed


def _divisors(d: int) -> List[int]:
    return [e for e in range(1, d + 1) if d % e == 0]


def trivial_spectrum(
    X: Union[ColoredComplex, SimplicialComplex],
    family: Optional[Union[HeckeFamily, FamilyLike]] = None,
) -> TrivialSpectrum:
    """
    Trivial points of a family on Ω_0 from its color-quotient collapses.

    Args:
        X: A colored complex (Z/d coloring) or a plain complex.
        family: Operators on Ω_0; defaults to the Hecke family of a colored
            complex and the vertex adjacency of a plain one.

    Raises:
        NotEquitable: a coloring is not equitable for the family.
    """
    if isinstance(X, ColoredComplex):
        complex_ = X.complex
        if family is None:
            family = hecke_family(X)
        colorings = [(e, [c % e for c in X.vertex_colors]) for e in _divisors(X.d)]
        source = f"Z/{X.d} coloring and its quotients"
    else:
        complex_ = X
        if family is None:
            family = adjacency(X, 0, 1)
        colorings = [(1, [0] * X.n_vertices)]
        source = "single class"
        graph = complex_.skeleton()
        if graph.number_of_edges() and nx.is_bipartite(graph):
            sides = nx.bipartite.color(graph)
            colorings.append((2, [sides[v] for v in range(X.n_vertices)]))
            source = "bipartition"
    operators = as_operator_list(family)
    for op in operators:
        if op.source.dim != 0 or op.source.size != complex_.n_vertices:
            raise InvalidParams(f"{op.label} does not act on functions on vertices")
    matrices = [op.dense() for op in operators]

    collapses = []
    gathered = []
    for e, classes in colorings:
        reduced = collapse(matrices, classes)
        points = joint_eigenvalues(reduced)
        collapses.append((e, points))
        gathered.append(points)
    points = _distinct(np.vstack(gathered))
    logger.info(f"Trivial spectrum ({source}): {len(points)} points")
    return TrivialSpectrum(points, source, collapses)
