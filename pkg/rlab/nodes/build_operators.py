from typing import Any, Dict

from rlab.errors import RlabError
from rlab.logging_config import get_logger
from rlab.operators.catalog import named_family, parse_operator_names
from rlab.state import PipelineState

logger = get_logger("nodes.build_operators")


def build_operators(state: PipelineState) -> Dict[str, Any]:
    """
    Assemble the operator family named in the configuration.

    Args:
        state (PipelineState): The current pipeline state containing:
            - config (RunConfig): operator names and cell dimension
            - complex (SimplicialComplex): The loaded complex
            - colored (ColoredComplex | None): Needed for Hecke operators

    Returns:
        Dict[str, Any]: Updated state containing:
            - family (OperatorFamily): The assembled family
            - commuting (bool): Whether commutators vanish within tolerance
            - warnings (list[str]): Non-commutation notes
    """
    logger.info("Building operators")
    config = state["config"]
    warnings = list(state.get("warnings", []) or [])
    try:
        names = parse_operator_names(config.operator)
        family = named_family(names, state["complex"], config.dim, state.get("colored"))
    except RlabError as e:
        logger.error(f"Building operators failed: {e}")
        return {"error": e}
    if not family.commuting:
        worst = max(family.commutator_defects.values(), default=0.0)
        warnings.append(f"family {family.label} does not commute (largest commutator norm {worst:.3e})")
    return {"family": family, "commuting": family.commuting, "warnings": warnings}
