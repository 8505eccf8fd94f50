from typing import Any, Dict

from rlab.errors import RlabError
from rlab.logging_config import get_logger
from rlab.spectra.trivial import trivial_spectrum as compute_trivial_spectrum
from rlab.state import PipelineState

logger = get_logger("nodes.trivial_spectrum")


def trivial_spectrum(state: PipelineState) -> Dict[str, Any]:
    """
    Collapse the family onto the color classes of the complex.

    Only families on vertices collapse; above dimension 0 the verdict relies
    on the trivial points of the universal cover alone.
    """
    logger.info("Computing trivial spectrum")
    family = state["family"]
    warnings = list(state.get("warnings", []) or [])
    if family.basis.dim != 0:
        logger.info(f"Family acts on {family.basis.dim}-cells; no color collapse")
        warnings.append("trivial spectrum: only the universal cover's trivial points are used above dimension 0")
        return {"trivial": None, "warnings": warnings}
    source = state.get("colored") or state["complex"]
    try:
        trivial = compute_trivial_spectrum(source, family)
    except RlabError as e:
        logger.error(f"Trivial spectrum failed: {e}")
        return {"error": e}
    return {"trivial": trivial, "warnings": warnings}
