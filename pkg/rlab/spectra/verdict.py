"""
Ramanujan verdicts: every spectral point is trivial or lies in the
spectrum of the universal cover.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from config import VERDICT_TOL
from rlab.errors import ArityMismatch
from rlab.logging_config import get_logger
from rlab.spectra.joint import SpectrumSet
from rlab.spectra.reference import ReferenceSpectrum, reference_trivial_points
from rlab.spectra.trivial import TrivialSpectrum

logger = get_logger("spectra.verdict")

TRIVIAL = "trivial"
COVERED = "covered"
VIOLATING = "violating"


@dataclass
class RamanujanVerdict:
    """
    Per-point classification of a spectrum.

    ``classes[n]`` and ``distances[n]`` refer to ``spectrum.points[n]``;
    the distance is to the nearest trivial point for trivial points and to
    the reference otherwise.
    """

    spectrum: SpectrumSet
    classes: List[str]
    distances: List[float]
    tolerance: float
    reference: str
    trivial_source: str
    empirical_reference: bool = False
    warnings: List[str] = field(default_factory=list)

    @property
    def ramanujan(self) -> bool:
        return VIOLATING not in self.classes

    @property
    def counts(self) -> Dict[str, int]:
        return {name: self.classes.count(name) for name in (TRIVIAL, COVERED, VIOLATING)}

    def violations(self) -> np.ndarray:
        mask = np.array([c == VIOLATING for c in self.classes], dtype=bool)
        return self.spectrum.points[mask]


def ramanujan_verdict(
    spectrum: SpectrumSet,
    trivial: Optional[TrivialSpectrum],
    reference: ReferenceSpectrum,
    tol: float = VERDICT_TOL,
    *,
    include_cover_trivial: bool = True,
) -> RamanujanVerdict:
    """
    Classify each point: trivial if within ``tol`` of a trivial point,
    covered if within ``tol`` of the reference, violating otherwise.

    The trivial points are the complex's color collapses together with, when
    ``include_cover_trivial`` is set, the trivial points of the universal
    cover itself.

    Raises:
        ArityMismatch: spectrum, trivial points and reference disagree in arity.
    """
    arity = spectrum.arity
    if reference.arity != arity:
        raise ArityMismatch(arity, reference.arity)
    pieces = []
    if trivial is not None:
        if trivial.arity != arity:
            raise ArityMismatch(arity, trivial.arity)
        pieces.append(trivial.points)
    if include_cover_trivial:
        pieces.append(reference_trivial_points(reference))
    trivial_points = np.vstack(pieces) if pieces else np.zeros((0, arity), dtype=np.complex128)

    classes: List[str] = []
    distances: List[float] = []
    cache: Dict[tuple, tuple] = {}
    for point in spectrum.points:
        key = tuple(np.round(point, 12))
        if key not in cache:
            if len(trivial_points):
                gap = float(np.min(np.max(np.abs(trivial_points - point[None, :]), axis=1)))
            else:
                gap = np.inf
            if gap <= tol:
                cache[key] = (TRIVIAL, gap)
            else:
                distance = reference.distance(point, tol)
                cache[key] = (COVERED if distance <= tol else VIOLATING, distance)
        label, distance = cache[key]
        classes.append(label)
        distances.append(distance)

    warnings = list(spectrum.warnings)
    if reference.empirical:
        warnings.append("empirical reference: verdict relative to a sampled spectrum cloud")
    verdict = RamanujanVerdict(
        spectrum,
        classes,
        distances,
        tol,
        reference.describe(),
        trivial.source if trivial is not None else "none",
        reference.empirical,
        warnings,
    )
    logger.info(f"Verdict: {'Ramanujan' if verdict.ramanujan else 'not Ramanujan'} {verdict.counts}")
    return verdict
