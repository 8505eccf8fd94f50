from typing import List, Optional, TypedDict

from rlab.building.colored import ColoredComplex
from rlab.complexes.complex import SimplicialComplex
from rlab.errors import RlabError
from rlab.models import RunConfig
from rlab.operators.chains import OperatorFamily
from rlab.spectra.joint import SpectrumSet
from rlab.spectra.reference import ReferenceSpectrum
from rlab.spectra.trivial import TrivialSpectrum
from rlab.spectra.verdict import RamanujanVerdict


class PipelineState(TypedDict, total=False):
    """
    Represents the state of the spectral pipeline.

    Attributes:
        config: The run configuration
        complex: The loaded complex
        colored: The colored complex when the input carries a coloring
        family: The operator family under study
        commuting: Whether the family commutes within tolerance
        spectrum: Joint spectrum of a commuting family
        spectra: Per-operator spectra of a non-commuting family
        trivial: Trivial spectrum from color collapses
        reference: Universal-cover reference spectrum
        verdict: Ramanujan verdict
        warnings: Accumulated warnings
        error: The error that stopped the pipeline, if any
    """

    config: RunConfig
    complex: SimplicialComplex
    colored: Optional[ColoredComplex]
    family: OperatorFamily
    commuting: bool
    spectrum: SpectrumSet
    spectra: List[SpectrumSet]
    trivial: Optional[TrivialSpectrum]
    reference: Optional[ReferenceSpectrum]
    verdict: RamanujanVerdict
    warnings: List[str]
    error: Optional[RlabError]
