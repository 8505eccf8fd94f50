from importlib.metadata import PackageNotFoundError, version
from typing import Dict, List, Optional

from langgraph.graph import END, StateGraph

from config import PIPELINE_ENTRY_POINT
from rlab.const import (
    BUILD_OPERATORS,
    JOINT_SPECTRUM,
    LOAD_COMPLEX,
    PER_OPERATOR_SPECTRA,
    TRIVIAL_SPECTRUM,
    VERDICT,
)
from rlab.logging_config import logger
from rlab.models import Report, RunConfig, SpectrumRow, VerdictSummary, complex_pair, round_value
from rlab.nodes import build_operators, joint_spectrum, load_complex, per_operator_spectra, trivial_spectrum, verdict
from rlab.spectra.joint import SORT_DECIMALS, SpectrumSet
from rlab.spectra.verdict import RamanujanVerdict, TRIVIAL
from rlab.state import PipelineState

REPORTED_PACKAGES = ("galois", "langgraph", "networkx", "numpy", "pydantic", "scipy")


def failed(state: PipelineState) -> bool:
    return state.get("error") is not None


def after_load(state: PipelineState) -> str:
    if failed(state):
        logger.info("Decision: loading failed, stop")
        return END
    return BUILD_OPERATORS


def decide_spectrum(state: PipelineState) -> str:
    """Commuting families get a joint spectrum; others are reported per operator."""
    if failed(state):
        logger.info("Decision: operator assembly failed, stop")
        return END
    if state.get("commuting", False):
        logger.info("Decision: family commutes, compute joint spectrum")
        return JOINT_SPECTRUM
    logger.info("Decision: family does not commute, compute per-operator spectra")
    return PER_OPERATOR_SPECTRA


def after_spectrum(state: PipelineState) -> str:
    if failed(state):
        return END
    if state["config"].command == "spec compute":
        logger.info("Decision: spectrum only, stop")
        return END
    return TRIVIAL_SPECTRUM


def after_trivial(state: PipelineState) -> str:
    return END if failed(state) else VERDICT


workflow = StateGraph(PipelineState)
workflow.add_node(LOAD_COMPLEX, load_complex)
workflow.add_node(BUILD_OPERATORS, build_operators)
workflow.add_node(JOINT_SPECTRUM, joint_spectrum)
workflow.add_node(PER_OPERATOR_SPECTRA, per_operator_spectra)
workflow.add_node(TRIVIAL_SPECTRUM, trivial_spectrum)
workflow.add_node(VERDICT, verdict)

workflow.set_entry_point(PIPELINE_ENTRY_POINT)

workflow.add_conditional_edges(LOAD_COMPLEX, after_load, {BUILD_OPERATORS: BUILD_OPERATORS, END: END})
workflow.add_conditional_edges(
    BUILD_OPERATORS,
    decide_spectrum,
    {JOINT_SPECTRUM: JOINT_SPECTRUM, PER_OPERATOR_SPECTRA: PER_OPERATOR_SPECTRA, END: END},
)
workflow.add_conditional_edges(JOINT_SPECTRUM, after_spectrum, {TRIVIAL_SPECTRUM: TRIVIAL_SPECTRUM, END: END})
workflow.add_conditional_edges(TRIVIAL_SPECTRUM, after_trivial, {VERDICT: VERDICT, END: END})
workflow.add_edge(PER_OPERATOR_SPECTRA, END)
workflow.add_edge(VERDICT, END)
app = workflow.compile()


def run_metadata(config: RunConfig) -> Dict[str, str]:
    """Package versions and the configuration hash; no timestamps, so reports are reproducible."""
    from rlab import __version__

    metadata = {"rlab": __version__, "config_hash": config.config_hash(), "seed": str(config.seed)}
    for package in REPORTED_PACKAGES:
        try:
            metadata[package] = version(package)
        except PackageNotFoundError:
            metadata[package] = "unknown"
    return metadata


def spectrum_rows(
    spectrum: SpectrumSet,
    result: Optional[RamanujanVerdict] = None,
    operator: Optional[str] = None,
) -> List[SpectrumRow]:
    """Group equal points (after rounding) into rows with multiplicity."""
    rows: List[SpectrumRow] = []
    previous = None
    for n, point in enumerate(spectrum.points):
        key = tuple(complex(round(z.real, SORT_DECIMALS), round(z.imag, SORT_DECIMALS)) for z in point)
        if key == previous:
            rows[-1].multiplicity += 1
            continue
        previous = key
        classification = distance = None
        if result is not None:
            classification = result.classes[n]
            if classification != TRIVIAL:
                distance = round_value(result.distances[n])
        rows.append(
            SpectrumRow(
                index=len(rows),
                operator=operator,
                point=[complex_pair(z) for z in point],
                multiplicity=1,
                classification=classification,
                distance=distance,
            )
        )
    return rows


def build_report(config: RunConfig, state: PipelineState) -> Report:
    family = state.get("family")
    report = Report(
        metadata=run_metadata(config),
        config=config,
        operators=[op.label for op in family.operators] if family is not None else [],
        warnings=list(state.get("warnings", []) or []),
    )
    result = state.get("verdict")
    if state.get("spectrum") is not None:
        report.spectrum = spectrum_rows(state["spectrum"], result)
    for spectrum in state.get("spectra", []) or []:
        offset = len(report.spectrum)
        for row in spectrum_rows(spectrum, operator=spectrum.labels[0] if spectrum.labels else None):
            row.index += offset
            report.spectrum.append(row)
    trivial = state.get("trivial")
    if trivial is not None:
        report.trivial = [[complex_pair(z) for z in point] for point in trivial.points]
    if result is not None:
        report.verdict = VerdictSummary(
            ramanujan=result.ramanujan,
            tolerance=result.tolerance,
            counts=result.counts,
            reference=result.reference,
            trivial_source=result.trivial_source,
            empirical_reference=result.empirical_reference,
        )
    return report


def cmd_pipeline(config: RunConfig) -> Report:
    """
    Run complex -> operators -> spectrum -> trivial spectrum -> verdict.

    Raises:
        RlabError: the error recorded by the failing stage, with its file context.
    """
    logger.info("=" * 50)
    logger.info(f"PIPELINE {config.command}: {config.input} ({config.operator}, dim {config.dim})")
    state = app.invoke({"config": config, "warnings": []})
    if state.get("error") is not None:
        raise state["error"]
    report = build_report(config, state)
    if report.verdict is not None:
        logger.info(f"Pipeline finished: Ramanujan = {report.verdict.ramanujan}")
    return report
