"""Measurement scenarios, events, and empirical models.

A measurement scenario is a pair (M, C): measurement labels plus contexts,
the maximal sets of comeasurable measurements. Everything here is immutable
and exact:

    MeasurementScenario    labels, contexts (index tuples), outcome arity d
    FormalEvent            e: S -> O for any subset S of measurements
    ObservableEvent        e: C -> O for a context C (context index + outcomes)
    Distribution           p in D(S), probabilities over E(S)
    EmpiricalModel         one Distribution per context
    CanonicalHiddenVariable  lambda: M -> O

Contexts are stored as ascending tuples of measurement indices, so the
measurement order inside a context (and hence the outcome-tuple order of its
events) follows the scenario's measurement order. Events of a context are
ordered lexicographically by outcome tuple.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .exceptions import DomainError, NormalizationError, ScenarioError

logger = logging.getLogger(__name__)

Outcomes = Tuple[int, ...]
RationalLike = Union[Fraction, int, str]


def outcome_tuples(arity: int, length: int) -> List[Outcomes]:
    """All outcome tuples of the given length, in lexicographic order."""
    return list(itertools.product(range(arity), repeat=length))


def outcome_index(outcomes: Sequence[int], arity: int) -> int:
    """Position of an outcome tuple in lexicographic order."""
    idx = 0
    for o in outcomes:
        idx = idx * arity + o
    return idx


def as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise DomainError(f"probabilities must be exact rationals, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational number: {value!r}")


# ----------------------------- scenario -----------------------------


@dataclass(frozen=True)
class MeasurementScenario:
    """A measurement scenario (M, C) with uniform outcome set {0, ..., d-1}.

    ``contexts`` holds measurement indices. Any iterable of indices is
    accepted and canonicalized to an ascending tuple. The empty scenario
    (no measurements, no contexts) is valid; it is the base case of the
    measurement-protocol recursion.
    """
    measurements: Tuple[str, ...]
    contexts: Tuple[Tuple[int, ...], ...]
    outcome_arity: int = 2

    def __post_init__(self):
        measurements = tuple(self.measurements)
        d = self.outcome_arity
        if isinstance(d, bool) or not isinstance(d, int) or d < 2:
            raise ScenarioError(f"outcome arity must be an integer >= 2, got {d!r}")
        if len(set(measurements)) != len(measurements):
            raise ScenarioError("measurement labels must be unique")
        for name in measurements:
            if not isinstance(name, str) or not name:
                raise ScenarioError(f"measurement labels must be non-empty strings, got {name!r}")

        contexts: List[Tuple[int, ...]] = []
        for raw in self.contexts:
            ctx = tuple(sorted(raw))
            if not ctx:
                raise ScenarioError("contexts must be non-empty")
            if len(set(ctx)) != len(ctx):
                raise ScenarioError(f"context repeats a measurement: {ctx}")
            for m in ctx:
                if not isinstance(m, int) or not 0 <= m < len(measurements):
                    raise ScenarioError(f"context refers to unknown measurement index {m!r}")
            contexts.append(ctx)

        object.__setattr__(self, "measurements", measurements)
        object.__setattr__(self, "contexts", tuple(contexts))

        sets = [frozenset(c) for c in contexts]
        for i, j in itertools.combinations(range(len(sets)), 2):
            if sets[i] == sets[j]:
                raise ScenarioError(
                    f"duplicate context {self.context_names(i)}",
                    self.context_names(i), self.context_names(j),
                )
            if sets[i] < sets[j] or sets[j] < sets[i]:
                small, big = (i, j) if sets[i] < sets[j] else (j, i)
                raise ScenarioError(
                    f"context {self.context_names(small)} is a proper subset of "
                    f"context {self.context_names(big)}",
                    self.context_names(small), self.context_names(big),
                )

        covered = set().union(*sets) if sets else set()
        for m, name in enumerate(measurements):
            if m not in covered:
                raise ScenarioError(f"measurement {name!r} belongs to no context")

    @classmethod
    def from_names(cls, measurements: Iterable[str],
                   contexts: Iterable[Iterable[str]],
                   outcome_arity: int = 2) -> "MeasurementScenario":
        names = tuple(measurements)
        lookup = {name: i for i, name in enumerate(names)}
        indexed = []
        for ctx in contexts:
            row = []
            for name in ctx:
                if name not in lookup:
                    raise ScenarioError(f"context names unknown measurement {name!r}")
                row.append(lookup[name])
            indexed.append(tuple(row))
        return cls(names, tuple(indexed), outcome_arity)

    # -- lookups --------------------------------------------------------

    @property
    def context_count(self) -> int:
        return len(self.contexts)

    @property
    def is_empty(self) -> bool:
        return not self.measurements

    @property
    def hidden_variable_count(self) -> int:
        return self.outcome_arity ** len(self.measurements)

    def index(self, name: str) -> int:
        try:
            return self.measurements.index(name)
        except ValueError:
            raise DomainError(f"unknown measurement {name!r}")

    def context_names(self, i: int) -> Tuple[str, ...]:
        return tuple(self.measurements[m] for m in self.contexts[i])

    def context_index(self, names: Iterable[str]) -> int:
        names = list(names)
        wanted = frozenset(self.index(n) for n in names)
        for i, ctx in enumerate(self.contexts):
            if frozenset(ctx) == wanted:
                return i
        raise DomainError(f"no context equals {sorted(names)}")

    def contexts_containing(self, m: int) -> List[int]:
        return [i for i, ctx in enumerate(self.contexts) if m in ctx]

    def event_count(self, i: int) -> int:
        return self.outcome_arity ** len(self.contexts[i])

    def events(self, i: int) -> Tuple["ObservableEvent", ...]:
        return tuple(ObservableEvent(i, o)
                     for o in outcome_tuples(self.outcome_arity, len(self.contexts[i])))

    def all_events(self) -> List["ObservableEvent"]:
        return [e for i in range(self.context_count) for e in self.events(i)]

    def check_event(self, event: "ObservableEvent") -> None:
        """Raise DomainError unless ``event`` is an observable event here."""
        if not 0 <= event.context < self.context_count:
            raise DomainError(f"unknown context index {event.context}")
        ctx = self.contexts[event.context]
        if len(event.outcomes) != len(ctx):
            raise DomainError(
                f"event on context {self.context_names(event.context)} needs "
                f"{len(ctx)} outcomes, got {len(event.outcomes)}")
        for o in event.outcomes:
            if not 0 <= o < self.outcome_arity:
                raise DomainError(f"outcome {o} outside 0..{self.outcome_arity - 1}")

    def event_as_formal(self, event: "ObservableEvent") -> "FormalEvent":
        return FormalEvent.from_mapping(dict(zip(self.context_names(event.context),
                                                 event.outcomes)))

    def describe(self, event: "ObservableEvent") -> str:
        """Human-readable form, e.g. ``A0=0 B1=1``."""
        return " ".join(f"{n}={o}" for n, o in
                        zip(self.context_names(event.context), event.outcomes))


def bell_scenario() -> MeasurementScenario:
    """The standard two-party, two-setting Bell scenario."""
    return MeasurementScenario.from_names(
        ["A0", "A1", "B0", "B1"],
        [["A0", "B0"], ["A0", "B1"], ["A1", "B0"], ["A1", "B1"]],
    )


def random_scenario(rng: random.Random, max_measurements: int = 3,
                    outcome_arity: int = 2) -> MeasurementScenario:
    """A random valid scenario on 1..max_measurements labels M0, M1, ...

    Random subsets are reduced to their maximal members; measurements left
    uncovered become singleton contexts.
    """
    k = rng.randint(1, max_measurements)
    drawn = set()
    for _ in range(rng.randint(1, 2 * k)):
        subset = frozenset(m for m in range(k) if rng.random() < 0.5)
        if subset:
            drawn.add(subset)
    maximal = [c for c in drawn if not any(c < other for other in drawn)]
    covered = set().union(*maximal) if maximal else set()
    maximal.extend(frozenset([m]) for m in range(k) if m not in covered)
    contexts = sorted(tuple(sorted(c)) for c in maximal)
    return MeasurementScenario(tuple(f"M{m}" for m in range(k)), tuple(contexts), outcome_arity)


# ------------------------------ events ------------------------------


@dataclass(frozen=True, order=True)
class ObservableEvent:
    """A joint outcome for all measurements of one context."""
    context: int
    outcomes: Outcomes

    def index(self, arity: int) -> int:
        return outcome_index(self.outcomes, arity)


@dataclass(frozen=True)
class FormalEvent:
    """A function e: S -> O; ``assignment`` is sorted by measurement label."""
    assignment: Tuple[Tuple[str, int], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int]) -> "FormalEvent":
        return cls(tuple(sorted(mapping.items())))

    @property
    def domain(self) -> frozenset:
        return frozenset(name for name, _ in self.assignment)

    def __getitem__(self, name: str) -> int:
        for key, value in self.assignment:
            if key == name:
                return value
        raise KeyError(name)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.assignment)


def coarse_grain(event: FormalEvent, subset: Iterable[str]) -> FormalEvent:
    """Forget the outcomes of measurements outside ``subset`` (e|_{S'})."""
    keep = frozenset(subset)
    if not keep <= event.domain:
        extra = sorted(keep - event.domain)
        raise DomainError(f"cannot coarse-grain to measurements outside the domain: {extra}")
    return FormalEvent(tuple((n, o) for n, o in event.assignment if n in keep))


# --------------------------- distributions --------------------------


@dataclass(frozen=True)
class Distribution:
    """A probability distribution on E(S), stored in lexicographic order."""
    domain: Tuple[str, ...]
    outcome_arity: int
    probs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        probs = tuple(as_fraction(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        expected = self.outcome_arity ** len(self.domain)
        if len(probs) != expected:
            raise NormalizationError(
                f"distribution on {self.domain} needs {expected} entries, got {len(probs)}")
        if any(p < 0 or p > 1 for p in probs):
            raise NormalizationError(f"probabilities on {self.domain} must lie in [0, 1]")
        if sum(probs) != 1:
            raise NormalizationError(
                f"probabilities on {self.domain} sum to {sum(probs)}, not 1")

    @classmethod
    def uniform(cls, domain: Sequence[str], arity: int) -> "Distribution":
        size = arity ** len(domain)
        return cls(tuple(domain), arity, (Fraction(1, size),) * size)

    def __getitem__(self, outcomes: Sequence[int]) -> Fraction:
        return self.probs[outcome_index(outcomes, self.outcome_arity)]

    def items(self) -> Iterator[Tuple[Outcomes, Fraction]]:
        return zip(outcome_tuples(self.outcome_arity, len(self.domain)), self.probs)


def marginalize(p: Distribution, subset: Iterable[str]) -> Distribution:
    """The marginal of ``p`` on ``subset``, summing over all extensions.

    The result's domain keeps the order the measurements have in ``p``.
    """
    keep = set(subset)
    missing = keep - set(p.domain)
    if missing:
        raise DomainError(f"cannot marginalize to measurements outside {p.domain}: {sorted(missing)}")
    positions = [i for i, name in enumerate(p.domain) if name in keep]
    d = p.outcome_arity
    acc = [Fraction(0)] * (d ** len(positions))
    for outcomes, prob in p.items():
        if prob:
            acc[outcome_index([outcomes[i] for i in positions], d)] += prob
    return Distribution(tuple(p.domain[i] for i in positions), d, tuple(acc))


# ------------------------------ models ------------------------------


@dataclass(frozen=True)
class EmpiricalModel:
    """Per-context probability tables on a measurement scenario.

    Construction checks normalization only. Nonsignalling is a property to
    be tested (``is_nonsignalling``) because signalling tables are valid
    inputs to that check; analyses reject them.
    """
    scenario: MeasurementScenario
    tables: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        s = self.scenario
        tables = tuple(tuple(as_fraction(p) for p in row) for row in self.tables)
        object.__setattr__(self, "tables", tables)
        if len(tables) != s.context_count:
            raise NormalizationError(
                f"model has {len(tables)} tables for {s.context_count} contexts")
        for i, row in enumerate(tables):
            if len(row) != s.event_count(i):
                raise NormalizationError(
                    f"context {s.context_names(i)} needs {s.event_count(i)} entries, got {len(row)}",
                    context=i)
            if any(p < 0 or p > 1 for p in row):
                raise NormalizationError(
                    f"context {s.context_names(i)} has a probability outside [0, 1]", context=i)
            if sum(row) != 1:
                raise NormalizationError(
                    f"context {s.context_names(i)} sums to {sum(row)}, not 1", context=i)

    @classmethod
    def from_rows(cls, scenario: MeasurementScenario,
                  rows: Sequence[Sequence[RationalLike]]) -> "EmpiricalModel":
        return cls(scenario, tuple(tuple(as_fraction(p) for p in row) for row in rows))

    def table(self, i: int) -> Distribution:
        return Distribution(self.scenario.context_names(i), self.scenario.outcome_arity,
                            self.tables[i])

    def probability(self, event: ObservableEvent) -> Fraction:
        self.scenario.check_event(event)
        return self.tables[event.context][event.index(self.scenario.outcome_arity)]

    def is_possible(self, event: ObservableEvent) -> bool:
        return self.probability(event) != 0

    def possible_events(self, i: int) -> List[ObservableEvent]:
        return [e for e, p in zip(self.scenario.events(i), self.tables[i]) if p != 0]

    def mixture(self, other: "EmpiricalModel", weight: RationalLike) -> "EmpiricalModel":
        """Return ``weight * self + (1 - weight) * other``."""
        w = as_fraction(weight)
        if not 0 <= w <= 1:
            raise DomainError(f"mixture weight must lie in [0, 1], got {w}")
        if other.scenario != self.scenario:
            raise DomainError("cannot mix models on different scenarios")
        return EmpiricalModel(self.scenario, tuple(
            tuple(w * a + (1 - w) * b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.tables, other.tables)))


@dataclass(frozen=True)
class NonsignallingCheck:
    """Result of ``is_nonsignalling``; truthy when the model is nonsignalling."""
    ok: bool
    pair: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_nonsignalling(model: EmpiricalModel) -> NonsignallingCheck:
    """Check that every pair of contexts has equal marginals on its overlap.

    Returns the first violating (i, j) pair in context order.
    """
    s = model.scenario
    for i, j in itertools.combinations(range(s.context_count), 2):
        shared = set(s.contexts[i]) & set(s.contexts[j])
        if not shared:
            continue
        names = [s.measurements[m] for m in sorted(shared)]
        if marginalize(model.table(i), names).probs != marginalize(model.table(j), names).probs:
            logger.debug("signalling between contexts %s and %s",
                         s.context_names(i), s.context_names(j))
            return NonsignallingCheck(False, (i, j))
    return NonsignallingCheck(True)


# -------------------------- hidden variables ------------------------


@dataclass(frozen=True)
class CanonicalHiddenVariable:
    """A global assignment lambda: M -> O, aligned with ``scenario.measurements``."""
    values: Outcomes

    @classmethod
    def from_mapping(cls, scenario: MeasurementScenario,
                     mapping: Mapping[str, int]) -> "CanonicalHiddenVariable":
        missing = [m for m in scenario.measurements if m not in mapping]
        if missing:
            raise DomainError(f"hidden variable is not total; missing {missing}")
        return cls(tuple(mapping[m] for m in scenario.measurements))

    def check(self, scenario: MeasurementScenario) -> None:
        if len(self.values) != len(scenario.measurements):
            raise DomainError(
                f"hidden variable has {len(self.values)} values for "
                f"{len(scenario.measurements)} measurements")
        if any(not 0 <= v < scenario.outcome_arity for v in self.values):
            raise DomainError("hidden variable assigns an outcome outside the outcome set")

    def restrict(self, scenario: MeasurementScenario, context: int) -> ObservableEvent:
        """The coarse-graining lambda|_C as an observable event."""
        return ObservableEvent(context, tuple(self.values[m] for m in scenario.contexts[context]))

    def as_dict(self, scenario: MeasurementScenario) -> Dict[str, int]:
        return dict(zip(scenario.measurements, self.values))


def all_hidden_variables(scenario: MeasurementScenario) -> Iterator[CanonicalHiddenVariable]:
    for values in itertools.product(range(scenario.outcome_arity),
                                    repeat=len(scenario.measurements)):
        yield CanonicalHiddenVariable(values)


def induced_model_of_hidden_variable(hv: CanonicalHiddenVariable,
                                     scenario: MeasurementScenario) -> EmpiricalModel:
    """The deterministic model assigning probability 1 to lambda|_C in every context."""
    hv.check(scenario)
    rows = []
    for i in range(scenario.context_count):
        row = [Fraction(0)] * scenario.event_count(i)
        row[hv.restrict(scenario, i).index(scenario.outcome_arity)] = Fraction(1)
        rows.append(tuple(row))
    return EmpiricalModel(scenario, tuple(rows))
