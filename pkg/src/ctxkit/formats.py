"""Codecs shared by the library and the CLI.

    scenario / model JSON   rationals as "num/den" strings
    DIMACS edge format      plus a JSON vertex map naming each event
    amplitude files         re-exported from ctxkit.stabilizer.amplitudes
    report JSON             every number exact
    CSW weight JSON
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exceptions import ParseError, ScenarioError
from .exclusivity import ExclusivityGraph
from .graphs import Graph
from .logic import ClassificationReport, CSWEvaluation, LogicalBellInequality
from .scenario import (
    CanonicalHiddenVariable,
    EmpiricalModel,
    MeasurementScenario,
    ObservableEvent,
    outcome_tuples,
)
from .stabilizer.amplitudes import format_amplitudes, parse_amplitudes  # noqa: F401


# ----------------------------- scalars ------------------------------


def format_fraction(value: Fraction) -> str:
    """Render an exact rational.

    Examples:
        >>> format_fraction(Fraction(13, 4))
        '13/4'
        >>> format_fraction(Fraction(3))
        '3'
    """
    return str(Fraction(value))


def parse_fraction(value: Any, source: Optional[str] = None) -> Fraction:
    """Parse "num/den", an integer, or a decimal string into a Fraction.

    JSON floats are refused: they are not exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"expected an exact rational, got {value!r}", source=source)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"not a rational number: {value!r}", source=source)


def outcome_string(outcomes: Sequence[int], arity: int) -> str:
    """Digits run together when d <= 10, comma-separated otherwise.

    Examples:
        >>> outcome_string((0, 1), 2)
        '01'
        >>> outcome_string((10, 3), 11)
        '10,3'
    """
    if arity <= 10:
        return "".join(str(o) for o in outcomes)
    return ",".join(str(o) for o in outcomes)


def parse_outcome_string(text: str, length: int, arity: int,
                         source: Optional[str] = None) -> Tuple[int, ...]:
    text = str(text).strip()
    try:
        if "," in text or arity > 10:
            outcomes = tuple(int(part) for part in text.split(",")) if text else ()
        else:
            outcomes = tuple(int(ch) for ch in text)
    except ValueError:
        raise ParseError(f"bad outcome string {text!r}", source=source)
    if len(outcomes) != length:
        raise ParseError(f"outcome string {text!r} needs {length} outcomes", source=source)
    if any(not 0 <= o < arity for o in outcomes):
        raise ParseError(f"outcome string {text!r} has an outcome outside 0..{arity - 1}",
                         source=source)
    return outcomes


def read_text(path: str) -> str:
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", source=path)


def read_json(path: str) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", source=path)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", source=path, line=e.lineno)


def _require(data: Any, key: str, source: Optional[str]) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"missing {key!r}", source=source)
    return data[key]


# ---------------------------- scenarios -----------------------------


def scenario_to_json(scenario: MeasurementScenario) -> Dict[str, Any]:
    return {
        "outcome_arity": scenario.outcome_arity,
        "measurements": list(scenario.measurements),
        "contexts": [list(scenario.context_names(i)) for i in range(scenario.context_count)],
    }


def scenario_from_json(data: Any, source: Optional[str] = None) -> MeasurementScenario:
    arity = _require(data, "outcome_arity", source)
    measurements = _require(data, "measurements", source)
    contexts = _require(data, "contexts", source)
    if not isinstance(arity, int) or isinstance(arity, bool):
        raise ParseError(f"outcome_arity must be an integer, got {arity!r}", source=source)
    if not isinstance(measurements, list) or not isinstance(contexts, list):
        raise ParseError("measurements and contexts must be lists", source=source)
    if not contexts:
        raise ScenarioError("a scenario needs at least one context")
    if not all(isinstance(c, list) for c in contexts):
        raise ParseError("each context must be a list of measurement names", source=source)
    return MeasurementScenario.from_names(measurements, contexts, arity)


def _context_ref(scenario: MeasurementScenario, ref: Any, source: Optional[str]) -> int:
    """A context given by index or by its list of measurement names."""
    if isinstance(ref, int) and not isinstance(ref, bool):
        if not 0 <= ref < scenario.context_count:
            raise ParseError(f"context index {ref} out of range", source=source)
        return ref
    if isinstance(ref, list):
        try:
            return scenario.context_index(ref)
        except ValueError as e:
            raise ParseError(str(e), source=source)
    raise ParseError(f"bad context reference {ref!r}", source=source)


# ------------------------------ models ------------------------------


def model_to_json(model: EmpiricalModel) -> Dict[str, Any]:
    s = model.scenario
    d = s.outcome_arity
    tables = []
    for i, row in enumerate(model.tables):
        keys = [outcome_string(o, d) for o in outcome_tuples(d, len(s.contexts[i]))]
        tables.append({"context": i,
                       "probs": {k: format_fraction(p) for k, p in zip(keys, row)}})
    return {"scenario": scenario_to_json(s), "tables": tables}


def model_from_json(data: Any, source: Optional[str] = None) -> EmpiricalModel:
    """Parse model JSON. Outcomes missing from a table have probability 0."""
    scenario = scenario_from_json(_require(data, "scenario", source), source)
    tables = _require(data, "tables", source)
    if not isinstance(tables, list):
        raise ParseError("tables must be a list", source=source)
    d = scenario.outcome_arity
    rows: List[Optional[List[Fraction]]] = [None] * scenario.context_count
    for entry in tables:
        i = _context_ref(scenario, _require(entry, "context", source), source)
        if rows[i] is not None:
            raise ParseError(f"context {list(scenario.context_names(i))} has two tables",
                             source=source)
        probs = _require(entry, "probs", source)
        if not isinstance(probs, dict):
            raise ParseError("probs must be an object", source=source)
        row = [Fraction(0)] * scenario.event_count(i)
        length = len(scenario.contexts[i])
        for key, value in probs.items():
            outcomes = parse_outcome_string(key, length, d, source)
            row[ObservableEvent(i, outcomes).index(d)] = parse_fraction(value, source)
        rows[i] = row
    missing = [list(scenario.context_names(i)) for i, r in enumerate(rows) if r is None]
    if missing:
        raise ParseError(f"no table for contexts {missing}", source=source)
    return EmpiricalModel.from_rows(scenario, rows)


def weights_from_json(scenario: MeasurementScenario, data: Any,
                      source: Optional[str] = None) -> Dict[ObservableEvent, Fraction]:
    """Parse ``{"weights": [{"context": i, "outcomes": "01", "weight": "1"}]}``."""
    entries = _require(data, "weights", source)
    if not isinstance(entries, list):
        raise ParseError("weights must be a list", source=source)
    weights: Dict[ObservableEvent, Fraction] = {}
    for entry in entries:
        i = _context_ref(scenario, _require(entry, "context", source), source)
        outcomes = parse_outcome_string(_require(entry, "outcomes", source),
                                        len(scenario.contexts[i]), scenario.outcome_arity, source)
        weights[ObservableEvent(i, outcomes)] = parse_fraction(_require(entry, "weight", source),
                                                               source)
    return weights


# ------------------------------ DIMACS ------------------------------


def write_dimacs(graph: Graph, comment: Optional[str] = None) -> str:
    """DIMACS edge format, 1-indexed, edges in lexicographic order."""
    lines = []
    if comment:
        lines.extend(f"c {line}" for line in comment.splitlines())
    edges = graph.edges()
    lines.append(f"p edge {graph.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_dimacs(text: str, source: Optional[str] = None) -> Graph:
    n = None
    declared = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        try:
            if kind == "p":
                if n is not None:
                    raise ParseError("second problem line", source=source, line=lineno)
                if len(tokens) != 4 or tokens[1].lower() not in ("edge", "col"):
                    raise ParseError(f"unknown problem line {raw.strip()!r}", source=source, line=lineno)
                n, declared = int(tokens[2]), int(tokens[3])
            elif kind == "e":
                if n is None:
                    raise ParseError("edge before problem line", source=source, line=lineno)
                u, v = int(tokens[1]), int(tokens[2])
                if not (1 <= u <= n and 1 <= v <= n) or u == v:
                    raise ParseError(f"bad edge {u} {v}", source=source, line=lineno)
                edges.add((min(u, v) - 1, max(u, v) - 1))
            else:
                raise ParseError(f"unknown line type {kind!r}", source=source, line=lineno)
        except ParseError:
            raise
        except (ValueError, IndexError):
            raise ParseError(f"malformed line {raw.strip()!r}", source=source, line=lineno)
    if n is None:
        raise ParseError("missing problem line", source=source)
    if declared != len(edges):
        raise ParseError(f"problem line declares {declared} edges, found {len(edges)}",
                         source=source)
    return Graph.from_edges(n, sorted(edges))


def vertex_map(xg: ExclusivityGraph) -> Dict[str, Any]:
    """Sidecar for a DIMACS export: 1-indexed vertex -> event."""
    s = xg.scenario
    return {
        str(i + 1): {
            "context": e.context,
            "measurements": list(s.context_names(e.context)),
            "outcomes": list(e.outcomes),
        }
        for i, e in enumerate(xg.events)
    }


# ------------------------------ reports -----------------------------


def event_to_json(scenario: MeasurementScenario, event: ObservableEvent) -> Dict[str, Any]:
    return {
        "context": event.context,
        "measurements": list(scenario.context_names(event.context)),
        "outcomes": outcome_string(event.outcomes, scenario.outcome_arity),
    }


def hidden_variable_to_json(scenario: MeasurementScenario,
                            hv: CanonicalHiddenVariable) -> Dict[str, int]:
    return hv.as_dict(scenario)


def csw_to_json(scenario: MeasurementScenario, csw: CSWEvaluation) -> Dict[str, Any]:
    return {
        "value": format_fraction(csw.value),
        "classical_bound": format_fraction(csw.classical_bound),
        "violated": csw.violated,
        "bound_witness": [event_to_json(scenario, e) for e in csw.bound_witness],
    }


def inequality_to_json(ineq: LogicalBellInequality) -> Dict[str, Any]:
    s = ineq.scenario
    return {
        "coefficients": list(ineq.coefficients),
        "selected": [[event_to_json(s, e) for e in row] for row in ineq.selected],
        "classical_bound": format_fraction(ineq.classical_bound),
        "ceiling": ineq.ceiling,
        "contradictory": ineq.is_contradictory(),
    }


def report_to_json(report: ClassificationReport, scenario: MeasurementScenario) -> Dict[str, Any]:
    """Report JSON; every number is an int or a "num/den" string."""
    w = report.witnesses
    witnesses: Dict[str, Any] = {
        "independent_set": [event_to_json(scenario, e) for e in w.independent_set],
        "hidden_variable": (hidden_variable_to_json(scenario, w.hidden_variable)
                            if w.hidden_variable is not None else None),
        "logical_event": (event_to_json(scenario, w.logical_event)
                          if w.logical_event is not None else None),
        "logical_degree": w.logical_degree,
        "logical_independent_set": [event_to_json(scenario, e) for e in w.logical_independent_set],
        "logical_verified": w.logical_verified,
        "joint_distribution": (
            [{"assignment": hidden_variable_to_json(scenario, hv), "weight": format_fraction(x)}
             for hv, x in w.joint_distribution]
            if w.joint_distribution is not None else None),
    }
    tau = report.noncontextual_fraction
    return {
        "nonsignalling": report.nonsignalling,
        "context_count": report.context_count,
        "support_size": report.support_size,
        "independence_number": report.independence_number,
        "minimal_independence_number": report.minimal_independence_number,
        "strongly_contextual": report.strongly_contextual,
        "logically_contextual": report.logically_contextual,
        "noncontextual": report.noncontextual,
        "contextual": report.contextual,
        "noncontextual_fraction": format_fraction(tau) if tau is not None else None,
        "csw": csw_to_json(scenario, report.csw) if report.csw is not None else None,
        "inequality": inequality_to_json(report.inequality) if report.inequality is not None else None,
        "witnesses": witnesses,
        "notes": list(report.notes),
    }
