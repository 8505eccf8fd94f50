from rlab.nodes.build_operators import build_operators
from rlab.nodes.joint_spectrum import joint_spectrum
from rlab.nodes.load_complex import load_complex
from rlab.nodes.per_operator_spectra import per_operator_spectra
from rlab.nodes.trivial_spectrum import trivial_spectrum
from rlab.nodes.verdict import verdict

__all__ = [
    "build_operators",
    "joint_spectrum",
    "load_complex",
    "per_operator_spectra",
    "trivial_spectrum",
    "verdict",
]
