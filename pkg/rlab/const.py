from config import (
    BUILD_OPERATORS,
    JOINT_SPECTRUM,
    LOAD_COMPLEX,
    PER_OPERATOR_SPECTRA,
    TRIVIAL_SPECTRUM,
    VERDICT,
)

__all__ = [
    "LOAD_COMPLEX",
    "BUILD_OPERATORS",
    "JOINT_SPECTRUM",
    "PER_OPERATOR_SPECTRA",
    "TRIVIAL_SPECTRUM",
    "VERDICT",
]
