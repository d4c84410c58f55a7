"""Verification suites behind ``ctxkit verify``.

Dispatch table:

  appendixB      Mermin square on n qubits: commuting triples, product
                 signs, and no sign valuation among the 2^9 candidates
  appendixC      protocol hypergraph vs exclusivity graph, on the given
                 scenario (default: Bell) plus --random scenarios
  lemma1         hidden variables <-> size-|C| independent sets, same inputs
  orthogonality  exclusivity adjacency vs projector orthogonality (numpy),
                 plus the exact overlap spectrum, for --n/--d

Every suite returns a dict with a boolean "passed" and its witnesses.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

from ctxkit import formats
from ctxkit.config import Limits
from ctxkit.logic import verify_lemma1
from ctxkit.protocols import verify_theorem4
from ctxkit.scenario import MeasurementScenario, bell_scenario, random_scenario
from ctxkit.stabilizer import (
    mermin_square_check,
    numeric_orthogonality_agrees,
    projector_overlap_spectrum,
    stabilizer_scenario,
)

from .commands import hyperedge_check_to_json
from .request import RequestError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteOptions:
    limits: Limits = field(default_factory=Limits)
    n: int = 2
    d: int = 2
    scenarios: Tuple[MeasurementScenario, ...] = ()
    random_count: int = 0
    seed: int = 0
    max_measurements: int = 3


def _inputs(options: SuiteOptions) -> List[MeasurementScenario]:
    """Explicit scenarios (Bell if none), then the random ones."""
    scenarios = list(options.scenarios)
    if not scenarios and not options.random_count:
        scenarios.append(bell_scenario())
    rng = random.Random(options.seed)
    scenarios.extend(random_scenario(rng, options.max_measurements)
                     for _ in range(options.random_count))
    return scenarios


def run_appendix_b(options: SuiteOptions) -> Dict[str, Any]:
    proof = mermin_square_check(options.n)
    return {
        "suite": "appendixB",
        "passed": proof.passed,
        "n": proof.n,
        "table": [list(row) for row in proof.table],
        "rows_commute": proof.rows_commute,
        "columns_commute": proof.columns_commute,
        "row_signs": list(proof.row_signs),
        "column_signs": list(proof.column_signs),
        "candidates_checked": proof.candidates_checked,
        "valuation": [list(row) for row in proof.valuation] if proof.valuation else None,
    }


def run_appendix_c(options: SuiteOptions) -> Dict[str, Any]:
    checked = 0
    protocols = 0
    for s in _inputs(options):
        check = verify_theorem4(s, cap=options.limits.protocols)
        checked += 1
        protocols += check.protocol_count
        if not check.ok:
            return {"suite": "appendixC", "passed": False, "checked": checked,
                    "protocols": protocols, "scenario": formats.scenario_to_json(s),
                    "failure": hyperedge_check_to_json(s, check)}
    return {"suite": "appendixC", "passed": True, "checked": checked, "protocols": protocols}


def run_lemma1(options: SuiteOptions) -> Dict[str, Any]:
    checked = 0
    hidden_variables = 0
    for s in _inputs(options):
        check = verify_lemma1(s, cap=options.limits.hidden_variables,
                              vertex_cap=options.limits.vertices)
        checked += 1
        hidden_variables += check.checked
        if not check.ok:
            bad = check.counterexample
            return {"suite": "lemma1", "passed": False, "checked": checked,
                    "scenario": formats.scenario_to_json(s),
                    "independence_number": check.alpha,
                    "counterexample": bad.as_dict(s) if bad is not None else None}
    return {"suite": "lemma1", "passed": True, "checked": checked,
            "hidden_variables": hidden_variables}


def run_orthogonality(options: SuiteOptions) -> Dict[str, Any]:
    cap = options.limits.phase_space
    check = numeric_orthogonality_agrees(options.n, options.d, cap=cap)
    spectrum = projector_overlap_spectrum(options.n, options.d, cap=cap)
    scenario = stabilizer_scenario(options.n, options.d, cap=cap).scenario
    return {
        "suite": "orthogonality",
        "passed": check.ok,
        "n": options.n,
        "d": options.d,
        "checked_pairs": check.checked_pairs,
        "mismatch": ([formats.event_to_json(scenario, e) for e in check.mismatch]
                     if check.mismatch is not None else None),
        "overlap_spectrum": [formats.format_fraction(x) for x in spectrum],
    }


SUITES: Dict[str, Callable[[SuiteOptions], Dict[str, Any]]] = {
    "appendixB": run_appendix_b,
    "appendixC": run_appendix_c,
    "lemma1": run_lemma1,
    "orthogonality": run_orthogonality,
}


def run_suite(name: str, options: SuiteOptions) -> Dict[str, Any]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise RequestError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    logger.info("running suite %s", name)
    return suite(options)
