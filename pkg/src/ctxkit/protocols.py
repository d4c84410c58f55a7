"""Measurement protocols and the hypergraph view of a scenario.

A protocol on (M, C) is empty when M is empty; otherwise it measures some
A in M and, for each outcome a, continues with a protocol on the induced
scenario M{A} (measurements sharing a context with A; contexts C minus A
for C containing A). Each protocol outcome lands on a full context, so it
names an observable event. The events of one protocol form a hyperedge.

Two distinct events share a hyperedge exactly when they are adjacent in the
exclusivity graph; verify_theorem4 checks this by brute force.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .config import DEFAULT_PROTOCOL_CAP
from .exceptions import CapExceededError, DomainError
from .exclusivity import exclusivity_graph
from .graphs import Graph, bits
from .scenario import MeasurementScenario, ObservableEvent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeasurementProtocol:
    """Empty when ``measurement`` is None; else continuation[a] follows outcome a."""
    measurement: Optional[str] = None
    continuation: Tuple["MeasurementProtocol", ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.measurement is None


EMPTY_PROTOCOL = MeasurementProtocol()

# ((name, outcome), ...) along one branch of a protocol
ProtocolPath = Tuple[Tuple[str, int], ...]

_ScenarioKey = Tuple[FrozenSet[str], FrozenSet[FrozenSet[str]], int]


def _key(s: MeasurementScenario) -> _ScenarioKey:
    return (frozenset(s.measurements),
            frozenset(frozenset(s.context_names(i)) for i in range(s.context_count)),
            s.outcome_arity)


def induced_scenario(s: MeasurementScenario, name: str) -> MeasurementScenario:
    """The scenario M{A} seen after measuring A."""
    a = s.index(name)
    containing = [ctx for ctx in s.contexts if a in ctx]
    rest = [tuple(m for m in ctx if m != a) for ctx in containing]
    if not any(rest):
        # A alone is a context: nothing is left to measure.
        return MeasurementScenario((), (), s.outcome_arity)
    kept = sorted({m for ctx in rest for m in ctx})
    renumber = {m: i for i, m in enumerate(kept)}
    return MeasurementScenario(
        tuple(s.measurements[m] for m in kept),
        tuple(tuple(renumber[m] for m in ctx) for ctx in rest),
        s.outcome_arity,
    )


class _Induced:
    """Induced scenarios and protocol counts, memoised by scenario key."""

    def __init__(self):
        self._induced: Dict[Tuple[_ScenarioKey, str], MeasurementScenario] = {}
        self._counts: Dict[_ScenarioKey, int] = {}
        self._protocols: Dict[_ScenarioKey, Tuple[MeasurementProtocol, ...]] = {}

    def induced(self, s: MeasurementScenario, name: str) -> MeasurementScenario:
        key = (_key(s), name)
        if key not in self._induced:
            self._induced[key] = induced_scenario(s, name)
        return self._induced[key]

    def count(self, s: MeasurementScenario) -> int:
        key = _key(s)
        if key not in self._counts:
            if s.is_empty:
                self._counts[key] = 1
            else:
                self._counts[key] = sum(self.count(self.induced(s, a)) ** s.outcome_arity
                                        for a in s.measurements)
        return self._counts[key]

    def protocols(self, s: MeasurementScenario) -> Tuple[MeasurementProtocol, ...]:
        key = _key(s)
        if key not in self._protocols:
            if s.is_empty:
                out: Tuple[MeasurementProtocol, ...] = (EMPTY_PROTOCOL,)
            else:
                found = []
                for a in s.measurements:
                    subs = self.protocols(self.induced(s, a))
                    for f in itertools.product(subs, repeat=s.outcome_arity):
                        found.append(MeasurementProtocol(a, f))
                out = tuple(found)
            self._protocols[key] = out
        return self._protocols[key]


def count_protocols(s: MeasurementScenario) -> int:
    return _Induced().count(s)


def _check_protocol_cap(s: MeasurementScenario, cache: _Induced, cap: int) -> int:
    total = cache.count(s)
    if total > cap:
        raise CapExceededError(
            f"scenario has {total} measurement protocols, above the cap of {cap}",
            cap=cap, size=total, what="protocols")
    return total


def enumerate_protocols(s: MeasurementScenario, *,
                        cap: int = DEFAULT_PROTOCOL_CAP) -> List[MeasurementProtocol]:
    """Every measurement protocol on ``s``, first measurement in label order."""
    cache = _Induced()
    total = _check_protocol_cap(s, cache, cap)
    logger.debug("enumerating %d protocols", total)
    return list(cache.protocols(s))


def protocol_paths(protocol: MeasurementProtocol) -> List[ProtocolPath]:
    if protocol.is_empty:
        return [()]
    return [((protocol.measurement, a),) + rest
            for a, sub in enumerate(protocol.continuation)
            for rest in protocol_paths(sub)]


def path_event(s: MeasurementScenario, path: ProtocolPath) -> ObservableEvent:
    """s(alpha): the observable event a complete protocol outcome determines."""
    assignment = dict(path)
    i = s.context_index(assignment)
    return ObservableEvent(i, tuple(assignment[n] for n in s.context_names(i)))


def protocol_outcomes(protocol: MeasurementProtocol, s: MeasurementScenario
                      ) -> List[Tuple[ProtocolPath, ObservableEvent]]:
    return [(path, path_event(s, path)) for path in protocol_paths(protocol)]


# ------------------------- realizing events -------------------------


def _default_protocol(s: MeasurementScenario) -> MeasurementProtocol:
    if s.is_empty:
        return EMPTY_PROTOCOL
    a = s.measurements[0]
    sub = _default_protocol(induced_scenario(s, a))
    return MeasurementProtocol(a, (sub,) * s.outcome_arity)


def _realize(s: MeasurementScenario, first: str, assignment: Mapping[str, int]) -> MeasurementProtocol:
    sub_scenario = induced_scenario(s, first)
    rest = {n: o for n, o in assignment.items() if n != first}
    if rest:
        follow = _realize(sub_scenario, min(rest, key=sub_scenario.index), rest)
    else:
        follow = _default_protocol(sub_scenario)
    fallback = _default_protocol(sub_scenario)
    return MeasurementProtocol(first, tuple(
        follow if a == assignment[first] else fallback for a in range(s.outcome_arity)))


def lemma2_protocol(s: MeasurementScenario, name: str, event: ObservableEvent) -> MeasurementProtocol:
    """A protocol that starts with ``name`` and has ``event`` among its outcomes."""
    s.check_event(event)
    names = s.context_names(event.context)
    if name not in names:
        raise DomainError(f"{name!r} is not in the context {names} of the event")
    return _realize(s, name, dict(zip(names, event.outcomes)))


# ---------------------------- hypergraph ----------------------------


@dataclass(frozen=True)
class ContextualityHypergraph:
    """Vertices are the exclusivity-graph events; hyperedges are vertex bitsets."""
    scenario: MeasurementScenario
    events: Tuple[ObservableEvent, ...]
    hyperedges: Tuple[int, ...]

    def hyperedge_events(self, edge: int) -> List[ObservableEvent]:
        return [self.events[v] for v in bits(edge)]

    def co_hyperedge_graph(self) -> Graph:
        """Distinct vertices joined iff some hyperedge holds both."""
        shared = [0] * len(self.events)
        for edge in self.hyperedges:
            for v in bits(edge):
                shared[v] |= edge
        return Graph(len(self.events), tuple(row & ~(1 << v) for v, row in enumerate(shared)))

    def non_orthogonality_graph(self) -> Graph:
        return self.co_hyperedge_graph().complement()


def contextuality_hypergraph(s: MeasurementScenario, *,
                             cap: int = DEFAULT_PROTOCOL_CAP) -> ContextualityHypergraph:
    events = tuple(s.all_events())
    index = {e: v for v, e in enumerate(events)}
    edges = set()
    for protocol in enumerate_protocols(s, cap=cap):
        mask = 0
        for _, event in protocol_outcomes(protocol, s):
            mask |= 1 << index[event]
        edges.add(mask)
    logger.debug("hypergraph: %d vertices, %d distinct hyperedges", len(events), len(edges))
    return ContextualityHypergraph(s, events, tuple(sorted(edges)))


@dataclass(frozen=True)
class Theorem4Check:
    ok: bool
    protocol_count: int
    hyperedge_count: int
    mismatch: Optional[Tuple[ObservableEvent, ObservableEvent]] = None


def verify_theorem4(s: MeasurementScenario, *, cap: int = DEFAULT_PROTOCOL_CAP) -> Theorem4Check:
    """Compare the complement of the non-orthogonality graph with the exclusivity graph.

    Both graphs use the same vertex list, so the identity map must be an
    isomorphism. On failure, ``mismatch`` is the first differing pair.
    """
    total = count_protocols(s)
    hypergraph = contextuality_hypergraph(s, cap=cap)
    complement = hypergraph.non_orthogonality_graph().complement()
    xg = exclusivity_graph(s)
    if xg.events != hypergraph.events:
        raise AssertionError("hypergraph and exclusivity graph list events differently")
    mismatch = None
    for u in range(xg.n):
        diff = (complement.adj[u] ^ xg.graph.adj[u]) >> (u + 1)
        if diff:
            v = u + 1 + (diff & -diff).bit_length() - 1
            mismatch = (xg.events[u], xg.events[v])
            break
    logger.info("hyperedge check on %d events: %s", xg.n, "ok" if mismatch is None else "mismatch")
    return Theorem4Check(mismatch is None, total, len(hypergraph.hyperedges), mismatch)
