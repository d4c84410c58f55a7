"""Logical Bell inequalities and the contextuality-hierarchy classifier.

Everything is phrased on exclusivity graphs: logical inconsistency of event
formulae is adjacency, joint satisfiability is an independent set, and the
classical bound of an inequality is a weighted independence number.

classify() runs the cheap graph checks before the exact LPs:

    nonsignalling     reject signalling tables
    strong            alpha(support) < |C|
    logical           minimal independence number of the support < |C|
    noncontextual     a global joint distribution exists (exact LP)
    fraction          largest noncontextual weight tau (exact LP)

The LPs enumerate canonical hidden variables, so they are only attempted
when d^|M| is within the hidden-variable cap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .config import DEFAULT_HIDDEN_VARIABLE_CAP, DEFAULT_VERTEX_CAP, WITNESS_CHECK_LIMIT, Limits
from .exceptions import CtxkitError, DomainError, NotComputedError, ScenarioError, SignallingError
from .exclusivity import ExclusivityGraph, exclusivity_graph, support_graph
from .graphs import independence_number, minimal_independence_number
from .scenario import (
    CanonicalHiddenVariable,
    EmpiricalModel,
    MeasurementScenario,
    ObservableEvent,
    RationalLike,
    all_hidden_variables,
    as_fraction,
    is_nonsignalling,
    outcome_index,
)
from .simplex import LPStatus, maximize

logger = logging.getLogger(__name__)


def require_nonsignalling(model: EmpiricalModel) -> None:
    check = is_nonsignalling(model)
    if not check:
        i, j = check.pair
        s = model.scenario
        raise SignallingError(
            f"model signals between contexts {s.context_names(i)} and {s.context_names(j)}",
            pair=check.pair)


# ------------------------- CSW inequalities -------------------------


@dataclass(frozen=True)
class CSWEvaluation:
    value: Fraction
    classical_bound: Fraction
    violated: bool
    bound_witness: Tuple[ObservableEvent, ...] = ()


def _weighted_alpha(xg: ExclusivityGraph, vertex_cap: int) -> Tuple[Fraction, List[ObservableEvent]]:
    positive = xg.restrict_to_positive()
    mis = independence_number(positive.graph, positive.weights,
                              clique_cover=positive.clique_cover(), vertex_cap=vertex_cap)
    return mis.value, positive.events_of(mis.witness)


def evaluate_csw(model: EmpiricalModel, weights: Mapping[ObservableEvent, RationalLike], *,
                 vertex_cap: int = DEFAULT_VERTEX_CAP,
                 parent: Optional[ExclusivityGraph] = None) -> CSWEvaluation:
    """Evaluate sum_i w_i p_i against the classical bound alpha(G, w)."""
    s = model.scenario
    clean: Dict[ObservableEvent, Fraction] = {}
    for event, w in weights.items():
        s.check_event(event)
        w = as_fraction(w)
        if w < 0:
            raise DomainError(f"weight on {s.describe(event)} is negative")
        clean[event] = w
    value = sum((w * model.probability(e) for e, w in clean.items()), Fraction(0))
    full = parent if parent is not None else exclusivity_graph(s)
    bound, witness = _weighted_alpha(full.with_weights(clean), vertex_cap)
    logger.info("csw: value %s, classical bound %s", value, bound)
    return CSWEvaluation(value, bound, value > bound, tuple(witness))


@dataclass(frozen=True)
class LogicalBellInequality:
    """sum_i k_i sum_{e in E_i} p(e) <= classical_bound.

    ``selected[i]`` is E_i, a subset of the events of context i. The bound is
    the weighted independence number with weight k_i on E_i; it is tight.
    """
    scenario: MeasurementScenario
    selected: Tuple[Tuple[ObservableEvent, ...], ...]
    coefficients: Tuple[int, ...]
    classical_bound: Fraction
    bound_witness: Tuple[ObservableEvent, ...] = ()

    @property
    def is_plain(self) -> bool:
        return all(k == 1 for k in self.coefficients)

    @property
    def ceiling(self) -> int:
        """Left-hand side when every formula holds with certainty."""
        return sum(k for k, events in zip(self.coefficients, self.selected) if events)

    def is_contradictory(self) -> bool:
        return self.classical_bound < self.ceiling

    def weights(self) -> Dict[ObservableEvent, Fraction]:
        return {e: Fraction(k) for k, events in zip(self.coefficients, self.selected)
                for e in events}

    def value(self, model: EmpiricalModel) -> Fraction:
        if model.scenario != self.scenario:
            raise DomainError("inequality and model live on different scenarios")
        return sum((w * model.probability(e) for e, w in self.weights().items()), Fraction(0))

    def violated_by(self, model: EmpiricalModel) -> bool:
        return self.value(model) > self.classical_bound


def logical_bell_inequality(scenario: MeasurementScenario,
                            selected: Sequence[Sequence[ObservableEvent]],
                            coefficients: Optional[Sequence[int]] = None, *,
                            vertex_cap: int = DEFAULT_VERTEX_CAP,
                            parent: Optional[ExclusivityGraph] = None) -> LogicalBellInequality:
    """Build a (possibly extended) logical Bell inequality and its tight bound."""
    n = scenario.context_count
    if len(selected) != n:
        raise DomainError(f"need one event subset per context ({n}), got {len(selected)}")
    coeffs = tuple([1] * n if coefficients is None else coefficients)
    if len(coeffs) != n:
        raise DomainError(f"need one coefficient per context ({n}), got {len(coeffs)}")
    for k in coeffs:
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise DomainError(f"coefficients must be nonnegative integers, got {k!r}")
    chosen = []
    for i, events in enumerate(selected):
        row = tuple(sorted(set(events)))
        for e in row:
            scenario.check_event(e)
            if e.context != i:
                raise DomainError(f"event {scenario.describe(e)} is not in context {i}")
        chosen.append(row)

    weights = {e: Fraction(k) for k, row in zip(coeffs, chosen) for e in row}
    full = parent if parent is not None else exclusivity_graph(scenario)
    bound, witness = _weighted_alpha(full.with_weights(weights), vertex_cap)
    return LogicalBellInequality(scenario, tuple(chosen), coeffs, bound, tuple(witness))


def strong_contextuality_inequality(model: EmpiricalModel, *,
                                    vertex_cap: int = DEFAULT_VERTEX_CAP) -> LogicalBellInequality:
    """The inequality whose E_i are the possible events; the model scores |C| on it."""
    require_nonsignalling(model)
    support = support_graph(model)
    mis = independence_number(support.graph, clique_cover=support.clique_cover(),
                              vertex_cap=vertex_cap)
    s = model.scenario
    selected = tuple(tuple(model.possible_events(i)) for i in range(s.context_count))
    return LogicalBellInequality(s, selected, (1,) * s.context_count, mis.value,
                                 tuple(support.events_of(mis.witness)))


# ------------------------- hidden variables -------------------------


def events_from_hidden_variable(scenario: MeasurementScenario,
                                hv: CanonicalHiddenVariable) -> Tuple[ObservableEvent, ...]:
    """The size-|C| independent set {lambda|_C : C in C}."""
    hv.check(scenario)
    return tuple(hv.restrict(scenario, i) for i in range(scenario.context_count))


def hidden_variable_from_events(scenario: MeasurementScenario,
                                events: Sequence[ObservableEvent]) -> CanonicalHiddenVariable:
    """Glue a size-|C| independent set of events into the global assignment it forces."""
    values: Dict[int, int] = {}
    distinct = set()
    for e in events:
        scenario.check_event(e)
        distinct.add(e)
        for m, o in zip(scenario.contexts[e.context], e.outcomes):
            if values.setdefault(m, o) != o:
                raise DomainError(
                    f"events disagree on {scenario.measurements[m]}; the set is not independent")
    if len(distinct) < scenario.context_count:
        raise DomainError(
            f"independent set has {len(distinct)} events; {scenario.context_count} are "
            f"needed to determine a hidden variable")
    return CanonicalHiddenVariable(tuple(values[m] for m in range(len(scenario.measurements))))


@dataclass(frozen=True)
class Lemma1Check:
    ok: bool
    checked: int
    alpha: int
    counterexample: Optional[CanonicalHiddenVariable] = None


def verify_lemma1(scenario: MeasurementScenario, *,
                  cap: int = DEFAULT_HIDDEN_VARIABLE_CAP,
                  vertex_cap: int = DEFAULT_VERTEX_CAP) -> Lemma1Check:
    """Check the hidden-variable / size-|C| independent set bijection exhaustively.

    Every lambda must give |C| pairwise consistent events that glue back to
    lambda, and the exclusivity graph must have independence number |C|.
    """
    _check_hidden_variable_cap(scenario, cap)
    xg = exclusivity_graph(scenario)
    alpha = int(independence_number(xg.graph, clique_cover=xg.clique_cover(),
                                    vertex_cap=vertex_cap, canonical=False).value)
    checked = 0
    for hv in all_hidden_variables(scenario):
        checked += 1
        events = events_from_hidden_variable(scenario, hv)
        vertices = {xg.vertex_of(e) for e in events}
        if (len(vertices) != scenario.context_count
                or not xg.graph.is_independent(vertices)
                or hidden_variable_from_events(scenario, events) != hv):
            return Lemma1Check(False, checked, alpha, hv)
    return Lemma1Check(alpha == scenario.context_count, checked, alpha)


def consistent_hidden_variables(model: EmpiricalModel,
                                fixed: Optional[Mapping[int, int]] = None
                                ) -> Iterator[CanonicalHiddenVariable]:
    """Hidden variables whose every coarse-graining is a possible event.

    ``fixed`` pins measurement indices to outcomes. Backtracks over the
    measurements in order and checks each context as soon as it is fully
    assigned.
    """
    s = model.scenario
    d = s.outcome_arity
    k = len(s.measurements)
    fixed = dict(fixed or {})
    possible = [frozenset(e.outcomes for e in model.possible_events(i))
                for i in range(s.context_count)]
    closing: List[List[int]] = [[] for _ in range(k)]
    for i, ctx in enumerate(s.contexts):
        closing[ctx[-1]].append(i)
    values = [0] * k

    def assign(m: int) -> Iterator[CanonicalHiddenVariable]:
        if m == k:
            yield CanonicalHiddenVariable(tuple(values))
            return
        for o in ([fixed[m]] if m in fixed else range(d)):
            values[m] = o
            if all(tuple(values[x] for x in s.contexts[i]) in possible[i] for i in closing[m]):
                yield from assign(m + 1)

    return assign(0)


def verify_logical_witness(model: EmpiricalModel, event: ObservableEvent) -> bool:
    """True iff every hidden variable extending ``event`` hits an impossible event."""
    s = model.scenario
    s.check_event(event)
    fixed = dict(zip(s.contexts[event.context], event.outcomes))
    return next(consistent_hidden_variables(model, fixed), None) is None


def _check_hidden_variable_cap(scenario: MeasurementScenario, cap: int) -> None:
    size = scenario.hidden_variable_count
    if size > cap:
        raise NotComputedError(
            f"{scenario.outcome_arity}^{len(scenario.measurements)} = {size} canonical hidden "
            f"variables exceed the cap of {cap}; not computed",
            cap=cap, size=size, what="hidden variables")


def _marginal_rows(model: EmpiricalModel, hvs: Sequence[CanonicalHiddenVariable]):
    """One row per possible event: which hidden variables restrict to it."""
    s = model.scenario
    d = s.outcome_arity
    keys: Dict[Tuple[int, int], int] = {}
    b: List[Fraction] = []
    for i in range(s.context_count):
        for j, p in enumerate(model.tables[i]):
            if p:
                keys[(i, j)] = len(b)
                b.append(p)
    A = [[Fraction(0)] * len(hvs) for _ in b]
    for col, hv in enumerate(hvs):
        for i, ctx in enumerate(s.contexts):
            row = keys[(i, outcome_index([hv.values[m] for m in ctx], d))]
            A[row][col] = Fraction(1)
    return A, b


def noncontextual_fraction(model: EmpiricalModel, *,
                           cap: int = DEFAULT_HIDDEN_VARIABLE_CAP) -> Fraction:
    """Largest tau with E = tau * A + (1 - tau) * Z, A noncontextual.

    Maximizes the total weight on canonical hidden variables subject to the
    weighted deterministic tables staying below E entrywise. Hidden variables
    that hit an impossible event can carry no weight and are never built.
    """
    _check_hidden_variable_cap(model.scenario, cap)
    hvs = list(consistent_hidden_variables(model))
    if not hvs:
        return Fraction(0)
    A, b = _marginal_rows(model, hvs)
    logger.debug("noncontextual fraction LP: %d hidden variables, %d rows", len(hvs), len(b))
    result = maximize([Fraction(1)] * len(hvs), A, b)
    if not result.is_optimal:
        raise CtxkitError(f"noncontextual fraction LP ended {result.status.value}")
    return result.value


def joint_distribution(model: EmpiricalModel, *, cap: int = DEFAULT_HIDDEN_VARIABLE_CAP
                       ) -> Optional[Dict[CanonicalHiddenVariable, Fraction]]:
    """A distribution on canonical hidden variables with E as its marginals, or None."""
    _check_hidden_variable_cap(model.scenario, cap)
    hvs = list(consistent_hidden_variables(model))
    if not hvs:
        return None
    A, b = _marginal_rows(model, hvs)
    A.append([Fraction(1)] * len(hvs))
    b.append(Fraction(1))
    result = maximize([Fraction(0)] * len(hvs), A_eq=A, b_eq=b)
    if result.status is LPStatus.INFEASIBLE:
        return None
    return {hv: x for hv, x in zip(hvs, result.x) if x}


# ---------------------------- classifier ----------------------------


@dataclass(frozen=True)
class ClassifyOptions:
    limits: Limits = field(default_factory=Limits)
    full_scan: bool = False
    lp: bool = True
    csw_weights: Optional[Mapping[ObservableEvent, RationalLike]] = None


@dataclass(frozen=True)
class Witnesses:
    """Certificates backing each verdict of a ClassificationReport."""
    # alpha-witness of the support graph; size |C| iff not strongly contextual
    independent_set: Tuple[ObservableEvent, ...] = ()
    hidden_variable: Optional[CanonicalHiddenVariable] = None
    logical_event: Optional[ObservableEvent] = None
    logical_degree: Optional[int] = None
    logical_independent_set: Tuple[ObservableEvent, ...] = ()
    logical_verified: Optional[bool] = None
    joint_distribution: Optional[Tuple[Tuple[CanonicalHiddenVariable, Fraction], ...]] = None


@dataclass(frozen=True)
class ClassificationReport:
    nonsignalling: bool
    context_count: int
    support_size: int
    independence_number: int
    strongly_contextual: bool
    logically_contextual: bool
    minimal_independence_number: Optional[int]
    noncontextual: Optional[bool]
    noncontextual_fraction: Optional[Fraction]
    witnesses: Witnesses
    inequality: Optional[LogicalBellInequality] = None
    csw: Optional[CSWEvaluation] = None
    notes: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.strongly_contextual and not self.logically_contextual:
            raise CtxkitError("inconsistent report: strongly but not logically contextual")
        if self.logically_contextual and self.noncontextual:
            raise CtxkitError("inconsistent report: logically contextual yet noncontextual")
        tau = self.noncontextual_fraction
        if tau is not None and (tau == 0) != self.strongly_contextual:
            raise CtxkitError(f"inconsistent report: tau = {tau} disagrees with strong verdict")
        if tau is not None and self.noncontextual is not None and (tau == 1) != self.noncontextual:
            raise CtxkitError(f"inconsistent report: tau = {tau} disagrees with joint LP")

    @property
    def contextual(self) -> Optional[bool]:
        """True if any check proves contextuality, None if nothing decided it."""
        if self.noncontextual is not None:
            return not self.noncontextual
        if self.logically_contextual or (self.csw is not None and self.csw.violated):
            return True
        return None


def classify(model: EmpiricalModel, options: Optional[ClassifyOptions] = None) -> ClassificationReport:
    """Place ``model`` in the hierarchy, with a certificate for each verdict."""
    opts = options or ClassifyOptions()
    limits = opts.limits
    require_nonsignalling(model)
    s = model.scenario
    n = s.context_count
    if s.is_empty:
        raise ScenarioError("cannot classify a model on the empty scenario: it has no contexts")

    full = exclusivity_graph(s)
    support = support_graph(model, parent=full)
    cover = support.clique_cover()

    mis = independence_number(support.graph, clique_cover=cover, vertex_cap=limits.vertices)
    alpha = int(mis.value)
    strong = alpha < n
    independent = tuple(support.events_of(mis.witness))
    hv = None if strong else hidden_variable_from_events(s, independent)
    logger.info("support graph: %d events, alpha %d, %d contexts", support.n, alpha, n)

    minimal: Optional[int] = None
    if strong and not opts.full_scan:
        # Any vertex of a maximum independent set has independence degree alpha.
        logical_vertex = min(mis.witness)
        logical_degree = alpha
        logical_set = independent
    else:
        scan = minimal_independence_number(
            support.graph, threshold=None if opts.full_scan else n, clique_cover=cover,
            threads=limits.threads, vertex_cap=limits.vertices)
        logical_vertex, logical_degree = scan.vertex, scan.value
        logical_set = tuple(support.events_of(scan.witness))
        if scan.exhaustive:
            minimal = scan.value
    logical = logical_degree < n

    logical_event = support.events[logical_vertex] if logical else None
    verified = None
    if logical and s.hidden_variable_count <= WITNESS_CHECK_LIMIT:
        verified = verify_logical_witness(model, logical_event)

    notes: List[str] = []
    noncontextual = tau = joint_items = None
    if opts.lp:
        try:
            joint = joint_distribution(model, cap=limits.hidden_variables)
            noncontextual = joint is not None
            if joint is not None:
                joint_items = tuple(sorted(joint.items(), key=lambda kv: kv[0].values))
            tau = noncontextual_fraction(model, cap=limits.hidden_variables)
        except NotComputedError as e:
            notes.append(str(e))
            logger.info("hidden-variable LPs skipped: %s", e)

    csw = None
    if opts.csw_weights is not None:
        csw = evaluate_csw(model, opts.csw_weights, vertex_cap=limits.vertices, parent=full)

    inequality = None
    if strong:
        selected = tuple(tuple(model.possible_events(i)) for i in range(n))
        inequality = LogicalBellInequality(s, selected, (1,) * n, mis.value, independent)

    witnesses = Witnesses(
        independent_set=independent,
        hidden_variable=hv,
        logical_event=logical_event,
        logical_degree=logical_degree,
        logical_independent_set=logical_set,
        logical_verified=verified,
        joint_distribution=joint_items,
    )
    report = ClassificationReport(
        nonsignalling=True,
        context_count=n,
        support_size=support.n,
        independence_number=alpha,
        strongly_contextual=strong,
        logically_contextual=logical,
        minimal_independence_number=minimal,
        noncontextual=noncontextual,
        noncontextual_fraction=tau,
        witnesses=witnesses,
        inequality=inequality,
        csw=csw,
        notes=tuple(notes),
    )
    logger.info("verdict: strong=%s logical=%s noncontextual=%s",
                strong, logical, noncontextual)
    return report
