from typing import Any, Dict, Optional

import numpy as np

from rlab.errors import InvalidParams, RlabError
from rlab.logging_config import get_logger
from rlab.spectra.reference import ReferenceSpectrum, parse_reference
from rlab.spectra.verdict import ramanujan_verdict
from rlab.state import PipelineState

logger = get_logger("nodes.verdict")


def _regular_degree(state: PipelineState) -> Optional[int]:
    degrees = {len(neighbors) for neighbors in state["complex"].neighbors}
    return degrees.pop() if len(degrees) == 1 else None


def _building_q(state: PipelineState) -> Optional[int]:
    """q with 1 + q + … + q^{d−1} equal to the common row sum of a_1."""
    colored = state.get("colored")
    if colored is None:
        return None
    rows = np.asarray(state["family"].operators[0].matrix.sum(axis=1)).ravel().real
    if colored.ball is not None:
        rows = rows[sorted(colored.ball.interior)]
    if rows.size == 0 or np.ptp(rows) > 0:
        return None
    target = int(round(rows[0]))
    for q in range(2, target + 1):
        if sum(q**k for k in range(colored.d)) == target:
            return q
    return None


def infer_reference(state: PipelineState) -> ReferenceSpectrum:
    """
    The universal-cover reference for the configured family.

    An explicit ``config.reference`` wins; otherwise regular graphs get the
    tree of their degree and Hecke families the building whose degree
    matches the row sums of a_1.

    Raises:
        InvalidParams: no reference can be inferred.
    """
    config = state["config"]
    if config.reference:
        return parse_reference(config.reference)
    names = [name.strip() for name in config.operator.split(",")]
    if names == ["hecke"]:
        q = _building_q(state)
        if q is not None:
            return ReferenceSpectrum.building(q, state["colored"].d)
    k = _regular_degree(state)
    if k is not None and names == ["adjacency"] and config.dim == 0:
        return ReferenceSpectrum.tree(k)
    if k is not None and names == ["edge-adjacency"]:
        return ReferenceSpectrum.tree_edges(k)
    raise InvalidParams(f"cannot infer a reference for {config.operator}; pass --ref")


def verdict(state: PipelineState) -> Dict[str, Any]:
    """
    Classify every spectral point as trivial, covered or violating.

    Args:
        state (PipelineState): The current pipeline state containing:
            - spectrum (SpectrumSet): The joint spectrum
            - trivial (TrivialSpectrum | None): Color-collapse points
            - config (RunConfig): reference and tolerance

    Returns:
        Dict[str, Any]: Updated state containing:
            - reference (ReferenceSpectrum): The reference used
            - verdict (RamanujanVerdict): Per-point classes and summary
            - warnings (list[str]): Empirical-reference notes
    """
    logger.info("Computing Ramanujan verdict")
    config = state["config"]
    warnings = list(state.get("warnings", []) or [])
    try:
        reference = infer_reference(state)
        result = ramanujan_verdict(state["spectrum"], state.get("trivial"), reference, config.tol)
    except RlabError as e:
        logger.error(f"Verdict failed: {e}")
        return {"error": e}
    warnings.extend(w for w in result.warnings if w not in warnings)
    return {"reference": reference, "verdict": result, "warnings": warnings}
