"""Command bodies: load inputs, call the library, return JSON-ready dicts.

Nothing here prints; cli.py owns stdout, stderr and exit codes.

    analyze          classification report, or graph invariants for --dimacs
    scenario build   canonical scenario JSON
    scenario export-graph
                     exclusivity graph as DIMACS plus a vertex map
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Optional, Sequence, Tuple

from ctxkit import formats
from ctxkit.config import Limits
from ctxkit.exclusivity import exclusivity_graph
from ctxkit.graphs import (
    Graph,
    fractional_packing_number,
    independence_number,
    minimal_independence_number,
)
from ctxkit.logic import ClassifyOptions, classify
from ctxkit.protocols import Theorem4Check, verify_theorem4
from ctxkit.scenario import EmpiricalModel, MeasurementScenario, ObservableEvent, bell_scenario
from ctxkit.stabilizer import (
    StateVector,
    catalog_state,
    chsh_weights,
    cs_state,
    maximally_mixed,
    product_stabilizer_state,
    quantum_empirical_model,
    read_amplitudes,
    stabilizer_scenario,
)
from ctxkit.stabilizer.models import State

from .request import AnalysisRequest, InputKind, RequestError, parse_stabilizer_spec

logger = logging.getLogger(__name__)


# ----------------------------- loading ------------------------------


def resolve_state(name: str, n: int, d: int) -> State:
    if name == "zero":
        return product_stabilizer_state(n, d)
    if name == "maximally_mixed":
        return maximally_mixed(n, d)
    if name == "cs":
        if (n, d) != (2, 3):
            raise RequestError("--state cs is a two-qutrit state; use --stabilizer n=2 d=3")
        return cs_state()
    return read_amplitudes(name)


def model_of_state(state: State, limits: Limits) -> EmpiricalModel:
    return quantum_empirical_model(state, state.n, state.d, cap=limits.phase_space)


def load_model(request: AnalysisRequest) -> EmpiricalModel:
    if request.kind is InputKind.CATALOG:
        entry = catalog_state(request.source)
        if isinstance(entry, StateVector):
            return model_of_state(entry, request.limits)
        return entry
    if request.kind is InputKind.MODEL:
        return formats.model_from_json(formats.read_json(request.source), source=request.source)
    if request.kind is InputKind.STABILIZER:
        state = resolve_state(request.state, request.n, request.d)
        return quantum_empirical_model(state, request.n, request.d, cap=request.limits.phase_space)
    raise RequestError(f"{request.kind.value} input does not describe a model")


def load_csw(spec: str, scenario: MeasurementScenario) -> Dict[ObservableEvent, Any]:
    if spec == "chsh":
        if scenario != bell_scenario():
            raise RequestError("--csw chsh needs the Bell scenario (A0, A1, B0, B1)")
        return chsh_weights()
    return formats.weights_from_json(scenario, formats.read_json(spec), source=spec)


def load_scenario(*, catalog: Optional[str] = None, stabilizer: Optional[Sequence[str]] = None,
                  scenario: Optional[str] = None, limits: Limits) -> MeasurementScenario:
    """Scenario from a catalog entry, a stabilizer spec, or a scenario/model JSON file."""
    given = [x for x in (catalog, stabilizer, scenario) if x is not None]
    if len(given) != 1:
        raise RequestError("give exactly one of --catalog, --stabilizer, --scenario")
    if catalog is not None:
        entry = catalog_state(catalog)
        if isinstance(entry, StateVector):
            return stabilizer_scenario(entry.n, entry.d, cap=limits.phase_space).scenario
        return entry.scenario
    if stabilizer is not None:
        n, d = parse_stabilizer_spec(stabilizer)
        return stabilizer_scenario(n, d, cap=limits.phase_space).scenario
    data = formats.read_json(scenario)
    if isinstance(data, dict) and "scenario" in data:
        data = data["scenario"]
    return formats.scenario_from_json(data, source=scenario)


# ----------------------------- analyze ------------------------------


def graph_invariants(graph: Graph, limits: Limits) -> Dict[str, Any]:
    """Invariants of a bare graph; vertex numbers are 1-indexed as in DIMACS."""
    mis = independence_number(graph, vertex_cap=limits.vertices)
    result: Dict[str, Any] = {
        "vertices": graph.n,
        "edges": graph.edge_count(),
        "independence_number": int(mis.value),
        "independence_witness": [v + 1 for v in mis.witness],
        "minimal_independence_number": None,
        "minimal_vertex": None,
        "fractional_packing_number": formats.format_fraction(fractional_packing_number(graph)),
    }
    if graph.n:
        scan = minimal_independence_number(graph, threads=limits.threads,
                                           vertex_cap=limits.vertices)
        result["minimal_independence_number"] = scan.value
        result["minimal_vertex"] = scan.vertex + 1
    return result


def do_analyze(request: AnalysisRequest) -> Dict[str, Any]:
    result: Dict[str, Any] = {"input": request.describe()}
    if request.kind is InputKind.DIMACS:
        graph = formats.read_dimacs(formats.read_text(request.source), source=request.source)
        result.update(graph_invariants(graph, request.limits))
        return result

    model = load_model(request)
    scenario = model.scenario
    weights = load_csw(request.csw, scenario) if request.csw is not None else None
    options = ClassifyOptions(limits=request.limits, full_scan=request.full_scan,
                              lp=request.lp, csw_weights=weights)
    report = classify(model, options)
    result.update(formats.report_to_json(report, scenario))
    if request.protocols:
        check = verify_theorem4(scenario, cap=request.limits.protocols)
        result["hyperedge_check"] = hyperedge_check_to_json(scenario, check)
    return result


def hyperedge_check_to_json(scenario: MeasurementScenario, check: Theorem4Check) -> Dict[str, Any]:
    return {
        "passed": check.ok,
        "protocols": check.protocol_count,
        "hyperedges": check.hyperedge_count,
        "mismatch": ([formats.event_to_json(scenario, e) for e in check.mismatch]
                     if check.mismatch is not None else None),
    }


# ----------------------------- scenario -----------------------------


def do_scenario_build(scenario: MeasurementScenario) -> Dict[str, Any]:
    return formats.scenario_to_json(scenario)


def do_export_graph(scenario: MeasurementScenario) -> Tuple[str, Dict[str, Any]]:
    """DIMACS text and vertex map for the exclusivity graph of ``scenario``."""
    xg = exclusivity_graph(scenario)
    comment = (f"exclusivity graph: {len(scenario.measurements)} measurements, "
               f"{scenario.context_count} contexts, outcome arity {scenario.outcome_arity}")
    logger.info("exporting %d vertices, %d edges", xg.n, xg.graph.edge_count())
    return formats.write_dimacs(xg.graph, comment), formats.vertex_map(xg)
