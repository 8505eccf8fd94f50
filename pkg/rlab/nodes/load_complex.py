from typing import Any, Dict

from rlab.building.colored import load_colored_complex
from rlab.errors import InvalidParams, RlabError
from rlab.io import load_complex as read_complex
from rlab.io import read_model
from rlab.logging_config import get_logger
from rlab.models import ComplexFile
from rlab.state import PipelineState

logger = get_logger("nodes.load_complex")


def load_complex(state: PipelineState) -> Dict[str, Any]:
    """
    Load the input complex named by the run configuration.

    Files carrying a color modulus ``d`` are loaded as colored complexes and
    validated; others as plain complexes.

    Args:
        state (PipelineState): The current pipeline state containing:
            - config (RunConfig): with ``input`` set to a complex file

    Returns:
        Dict[str, Any]: Updated state containing:
            - complex (SimplicialComplex): The loaded complex
            - colored (ColoredComplex | None): The coloring, if present
            - warnings (list[str]): Frontier notes for generated balls
            - error (RlabError): Set instead when loading fails
    """
    logger.info("Loading complex")
    config = state["config"]
    warnings = list(state.get("warnings", []) or [])
    try:
        if not config.input:
            raise InvalidParams("the pipeline needs an input complex")
        if read_model(config.input, ComplexFile).d is not None:
            colored = load_colored_complex(config.input)
            complex_ = colored.complex
            if colored.boundary_affected:
                warnings.append(
                    f"generated ball of radius {colored.ball.radius}: {len(colored.ball.frontier)} frontier vertices"
                )
        else:
            colored = None
            complex_ = read_complex(config.input)
    except RlabError as e:
        logger.error(f"Loading {config.input} failed: {e}")
        return {"error": e, "warnings": warnings}
    logger.info(f"Loaded complex with f-vector {complex_.f_vector}")
    return {"complex": complex_, "colored": colored, "warnings": warnings}
