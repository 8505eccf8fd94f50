from typing import Any, Dict

from rlab.errors import RlabError
from rlab.logging_config import get_logger
from rlab.spectra.joint import per_operator_spectra as compute_per_operator_spectra
from rlab.state import PipelineState

logger = get_logger("nodes.per_operator_spectra")


def per_operator_spectra(state: PipelineState) -> Dict[str, Any]:
    """Separate spectra for a family without a joint spectrum; no verdict follows."""
    logger.info("Computing per-operator spectra")
    warnings = list(state.get("warnings", []) or [])
    try:
        spectra = compute_per_operator_spectra(state["family"])
    except RlabError as e:
        logger.error(f"Per-operator spectra failed: {e}")
        return {"error": e}
    warnings.append("non-commuting family: spectra reported per operator, no verdict")
    return {"spectra": spectra, "warnings": warnings}
