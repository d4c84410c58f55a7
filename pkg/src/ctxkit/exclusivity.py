"""Exclusivity graphs of scenarios and support graphs of empirical models."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exceptions import DomainError
from .graphs import Graph, mask_of
from .scenario import EmpiricalModel, MeasurementScenario, ObservableEvent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExclusivityGraph:
    """Observable events as vertices; edges join inconsistent events.

    ``vertex_ids[i]`` is the index of local vertex i in the full exclusivity
    graph of the scenario, so support graphs and weighted restrictions keep
    naming the same events. ``context_cliques[c]`` lists the local vertices
    of context c (possibly none in a restriction).
    """
    scenario: MeasurementScenario
    events: Tuple[ObservableEvent, ...]
    graph: Graph
    vertex_ids: Tuple[int, ...]
    context_cliques: Tuple[Tuple[int, ...], ...]
    weights: Optional[Tuple[Fraction, ...]] = None

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def edges(self) -> List[Tuple[int, int]]:
        return self.graph.edges()

    @cached_property
    def _index(self) -> Dict[ObservableEvent, int]:
        return {e: i for i, e in enumerate(self.events)}

    def vertex_of(self, event: ObservableEvent) -> int:
        try:
            return self._index[event]
        except KeyError:
            raise DomainError(f"event {event} is not a vertex of this graph")

    def clique_cover(self) -> List[int]:
        """Context cliques as vertex bitsets, for the independence solver."""
        return [mask_of(c) for c in self.context_cliques]

    def weight_vector(self) -> Tuple[Fraction, ...]:
        return self.weights if self.weights is not None else (Fraction(1),) * self.n

    def with_weights(self, weights: Mapping[ObservableEvent, Fraction]) -> "ExclusivityGraph":
        """Copy with the given event weights; unlisted vertices weigh 0."""
        vector = [Fraction(0)] * self.n
        for event, w in weights.items():
            w = Fraction(w)
            if w < 0:
                raise DomainError(f"weight on {event} is negative")
            vector[self.vertex_of(event)] = w
        return ExclusivityGraph(self.scenario, self.events, self.graph, self.vertex_ids,
                                self.context_cliques, tuple(vector))

    def induced(self, local: Sequence[int]) -> "ExclusivityGraph":
        """Induced subgraph on the given local vertices, in ascending order."""
        keep = sorted(local)
        position = {v: i for i, v in enumerate(keep)}
        cliques = tuple(tuple(position[v] for v in c if v in position)
                        for c in self.context_cliques)
        weights = None if self.weights is None else tuple(self.weights[v] for v in keep)
        return ExclusivityGraph(self.scenario, tuple(self.events[v] for v in keep),
                                self.graph.induced(keep), tuple(self.vertex_ids[v] for v in keep),
                                cliques, weights)

    def restrict_to_positive(self) -> "ExclusivityGraph":
        ws = self.weight_vector()
        return self.induced([v for v in range(self.n) if ws[v] > 0])

    def events_of(self, vertices: Sequence[int]) -> List[ObservableEvent]:
        return [self.events[v] for v in sorted(vertices)]


def exclusivity_graph(scenario: MeasurementScenario) -> ExclusivityGraph:
    """The exclusivity graph G(M, C): one vertex per observable event."""
    events = tuple(scenario.all_events())
    d = scenario.outcome_arity
    m_count = len(scenario.measurements)

    # touched[m]: vertices whose context contains m; by_outcome[m][o]: those assigning o.
    touched = [0] * m_count
    by_outcome = [[0] * d for _ in range(m_count)]
    cliques: List[List[int]] = [[] for _ in range(scenario.context_count)]
    for v, event in enumerate(events):
        bit = 1 << v
        cliques[event.context].append(v)
        for m, o in zip(scenario.contexts[event.context], event.outcomes):
            touched[m] |= bit
            by_outcome[m][o] |= bit

    adj = []
    for v, event in enumerate(events):
        row = 0
        for m, o in zip(scenario.contexts[event.context], event.outcomes):
            row |= touched[m] & ~by_outcome[m][o]
        adj.append(row)

    graph = Graph(len(events), tuple(adj))
    logger.debug("exclusivity graph: %d vertices, %d contexts", graph.n, scenario.context_count)
    return ExclusivityGraph(scenario, events, graph, tuple(range(len(events))),
                            tuple(tuple(c) for c in cliques))


def support_graph(model: EmpiricalModel, parent: Optional[ExclusivityGraph] = None) -> ExclusivityGraph:
    """Induced subgraph of the exclusivity graph on events of nonzero probability."""
    full = parent if parent is not None else exclusivity_graph(model.scenario)
    d = model.scenario.outcome_arity
    possible = [v for v, e in enumerate(full.events)
                if model.tables[e.context][e.index(d)] != 0]
    support = full.induced(possible)
    logger.debug("support graph: %d of %d events possible", support.n, full.n)
    return support
