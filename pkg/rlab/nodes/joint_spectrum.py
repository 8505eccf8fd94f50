from typing import Any, Dict

from rlab.errors import RlabError
from rlab.logging_config import get_logger
from rlab.spectra.joint import SpectrumSet, extreme_eigenvalues
from rlab.spectra.joint import joint_spectrum as compute_joint_spectrum
from rlab.state import PipelineState

logger = get_logger("nodes.joint_spectrum")


def joint_spectrum(state: PipelineState) -> Dict[str, Any]:
    """
    Diagonalize a commuting family simultaneously.

    With ``config.top`` set and a single self-adjoint operator only the
    ``top`` largest-magnitude eigenvalues are computed, by Lanczos iteration;
    the spectrum is then marked incomplete.
    """
    logger.info("Computing joint spectrum")
    config = state["config"]
    family = state["family"]
    try:
        if config.top and len(family) == 1 and family.operators[0].is_self_adjoint():
            op = family.operators[0]
            values = extreme_eigenvalues(op, config.top)
            spectrum = SpectrumSet(values, (op.label,), complete=False)
        else:
            spectrum = compute_joint_spectrum(family, seed=config.seed)
    except RlabError as e:
        logger.error(f"Joint spectrum failed: {e}")
        return {"error": e}
    logger.info(f"Spectrum with {len(spectrum)} points of arity {spectrum.arity}")
    return {"spectrum": spectrum}
