from rlab.spectra.joint import (
    SpectrumSet,
    direct_sum_spectrum_check,
    extreme_eigenvalues,
    joint_eigenvalues,
    joint_spectrum,
    match_multisets,
    per_operator_spectra,
)
from rlab.spectra.lifts import Lift, random_lift
from rlab.spectra.reference import (
    ReferenceSpectrum,
    TorusImage,
    empirical_reference,
    parse_reference,
    reference_spectrum,
    reference_trivial_points,
    sample_torus_points,
)
from rlab.spectra.scan import ScanReport, alon_boppana_scan, cover_monotonicity_check, girth, injectivity_radius
from rlab.spectra.trivial import TrivialSpectrum, collapse, trivial_spectrum
from rlab.spectra.verdict import RamanujanVerdict, ramanujan_verdict

__all__ = [
    "SpectrumSet",
    "direct_sum_spectrum_check",
    "extreme_eigenvalues",
    "joint_eigenvalues",
    "joint_spectrum",
    "match_multisets",
    "per_operator_spectra",
    "Lift",
    "random_lift",
    "ReferenceSpectrum",
    "TorusImage",
    "empirical_reference",
    "parse_reference",
    "reference_spectrum",
    "reference_trivial_points",
    "sample_torus_points",
    "ScanReport",
    "alon_boppana_scan",
    "cover_monotonicity_check",
    "girth",
    "injectivity_radius",
    "TrivialSpectrum",
    "collapse",
    "trivial_spectrum",
    "RamanujanVerdict",
    "ramanujan_verdict",
]
