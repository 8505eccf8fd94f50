"""
Family experiments: Alon–Boppana coverage scans and cover monotonicity.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from scipy.spatial import cKDTree

from config import COMMUTATOR_TOL, RLAB_SEED, RLAB_THREADS
from rlab.complexes.complex import SimplicialComplex
from rlab.complexes.covers import CoverMap, check_cover_map
from rlab.complexes.groups import QuotientResult, induced_cover
from rlab.errors import InvalidParams, NotACover
from rlab.logging_config import get_logger
from rlab.models import ScanRow, round_value
from rlab.spectra.joint import FamilyConstructor, SpectrumSet, joint_spectrum, match_multisets
from rlab.spectra.reference import ReferenceSpectrum

logger = get_logger("spectra.scan")

DEFAULT_SAMPLES = 2000

CoverPair = Union[
    CoverMap,
    Tuple[QuotientResult, QuotientResult],
    Tuple[SimplicialComplex, SimplicialComplex, Sequence[int]],
]


def girth(X: SimplicialComplex) -> Optional[int]:
    """Length of the shortest cycle of the 1-skeleton, None for a forest."""
    graph = X.skeleton()
    best: Optional[int] = None
    for root in graph.nodes:
        depth = {root: 0}
        parent = {root: None}
        frontier = [root]
        while frontier:
            if best is not None and 2 * depth[frontier[0]] + 1 >= best:
                break
            following = []
            for u in frontier:
                for w in graph.neighbors(u):
                    if w not in depth:
                        depth[w] = depth[u] + 1
                        parent[w] = u
                        following.append(w)
                    elif parent[u] != w:
                        length = depth[u] + depth[w] + 1
                        if best is None or length < best:
                            best = length
            frontier = following
        if best == 3:
            break
    return best


def injectivity_radius(X: SimplicialComplex) -> int:
    """Largest n such that every ball of radius n in the 1-skeleton is a tree."""
    g = girth(X)
    if g is None:
        return nx.diameter(X.skeleton()) if X.n_vertices > 1 else 0
    return (g - 1) // 2


def covering_radius(spectrum: SpectrumSet, samples: np.ndarray) -> float:
    """max over reference samples of the distance to the nearest spectral point."""
    if len(spectrum) == 0:
        return float("inf")
    points = spectrum.points
    tree = cKDTree(np.concatenate([points.real, points.imag], axis=1))
    distances, _ = tree.query(np.concatenate([samples.real, samples.imag], axis=1))
    return float(np.max(distances))


@dataclass
class ScanMember:
    n_vertices: int
    girth: Optional[int]
    injectivity_radius: int
    covering_radius: float
    spectrum: SpectrumSet

    def as_row(self) -> ScanRow:
        return ScanRow(
            n_vertices=self.n_vertices,
            girth=self.girth,
            injectivity_radius=self.injectivity_radius,
            covering_radius=round_value(self.covering_radius),
            spectrum_size=len(self.spectrum),
        )


@dataclass
class ScanReport:
    """
    Coverage of a reference by the spectra of a family, in input order.

    ``monotone`` holds when ε is non-increasing along the members ordered by
    injectivity radius (ties by size); ``strictly_decreasing`` compares
    consecutive members in input order.
    """

    members: List[ScanMember]
    reference: str
    samples: int
    warnings: List[str] = field(default_factory=list)

    @property
    def epsilons(self) -> List[float]:
        return [m.covering_radius for m in self.members]

    @property
    def monotone(self) -> bool:
        ordered = sorted(self.members, key=lambda m: (m.injectivity_radius, m.n_vertices))
        values = [m.covering_radius for m in ordered]
        return all(b <= a for a, b in zip(values, values[1:]))

    @property
    def strictly_decreasing(self) -> bool:
        values = self.epsilons
        return all(b < a for a, b in zip(values, values[1:]))

    def rows(self) -> List[ScanRow]:
        return [m.as_row() for m in self.members]


def alon_boppana_scan(
    members: Sequence[SimplicialComplex],
    constructor: FamilyConstructor,
    reference: ReferenceSpectrum,
    samples: int = DEFAULT_SAMPLES,
    threads: int = RLAB_THREADS,
    seed: int = RLAB_SEED,
) -> ScanReport:
    """
    Covering radius ε of the reference by each member's spectrum.

    Members are diagonalized concurrently on up to ``threads`` workers; the
    reference is sampled once so every member is measured on the same points.
    """
    if not members:
        raise InvalidParams("a scan needs at least one family member")
    warnings: List[str] = []
    if len(members) < 2:
        warnings.append("single-member scan: no trend to report")
    reference_points = reference.sample(samples, np.random.default_rng(seed))

    def measure(X: SimplicialComplex) -> ScanMember:
        spectrum = joint_spectrum(constructor(X), seed=seed)
        if spectrum.arity != reference.arity:
            raise InvalidParams(f"family arity {spectrum.arity} does not match reference arity {reference.arity}")
        epsilon = covering_radius(spectrum, reference_points)
        g = girth(X)
        member = ScanMember(X.n_vertices, g, injectivity_radius(X), epsilon, spectrum)
        logger.info(f"Scan member n={X.n_vertices}: girth {g}, ε = {epsilon:.4f}")
        return member

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(measure, members))

    radii = [m.injectivity_radius for m in results]
    if any(b < a for a, b in zip(radii, radii[1:])):
        message = f"injectivity radius is not increasing along the family: {radii}"
        logger.warning(message)
        warnings.append(message)
    report = ScanReport(results, reference.describe(), len(reference_points), warnings)
    if not report.monotone:
        logger.warning(f"Covering radius is not monotone: {report.epsilons}")
    return report


def _as_cover(pair: CoverPair) -> CoverMap:
    if isinstance(pair, CoverMap):
        result = check_cover_map(pair.vertex_map, pair.source, pair.target)
        if not result:
            raise NotACover(result.reason or "unknown")
        return pair
    if len(pair) == 2 and all(isinstance(part, QuotientResult) for part in pair):
        return induced_cover(pair[0], pair[1])
    if len(pair) == 3:
        source, target, vertex_map = pair
        if len(vertex_map) != source.n_vertices:
            raise NotACover(f"vertex map has {len(vertex_map)} entries for {source.n_vertices} vertices")
        return CoverMap.checked(vertex_map, source, target)
    raise InvalidParams("expected a cover map, a pair of quotients or (source, target, vertex map)")


def cover_monotonicity_check(
    pair: CoverPair,
    constructor: FamilyConstructor,
    tol: float = COMMUTATOR_TOL,
) -> bool:
    """
    Whether the spectrum of the base embeds, with multiplicity, in the spectrum of the cover.

    Raises:
        NotACover: no verified cover map between the two complexes.
    """
    cover = _as_cover(pair)
    upstairs = joint_spectrum(constructor(cover.source), tol=tol)
    downstairs = joint_spectrum(constructor(cover.target), tol=tol)
    embedded = match_multisets(downstairs, upstairs, tol)
    logger.info(
        f"Cover monotonicity {cover.source.n_vertices} -> {cover.target.n_vertices} vertices: {embedded}"
    )
    return embedded
