"""Tests for measurement protocols and the protocol hypergraph."""

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.exceptions import CapExceededError, DomainError
from ctxkit.exclusivity import exclusivity_graph
from ctxkit.protocols import (
    EMPTY_PROTOCOL,
    MeasurementProtocol,
    contextuality_hypergraph,
    count_protocols,
    enumerate_protocols,
    induced_scenario,
    lemma2_protocol,
    protocol_outcomes,
    protocol_paths,
    verify_theorem4,
)
from ctxkit.scenario import MeasurementScenario, ObservableEvent, bell_scenario, random_scenario


@pytest.fixture
def bell():
    return bell_scenario()


@pytest.fixture
def triangle():
    return MeasurementScenario.from_names(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]])


class TestInducedScenario:
    def test_bell(self, bell):
        sub = induced_scenario(bell, "A0")
        assert sub.measurements == ("B0", "B1")
        assert sub.contexts == ((0,), (1,))

    def test_singleton_context_leaves_nothing(self):
        s = MeasurementScenario.from_names(["x", "y"], [["x"], ["y"]])
        assert induced_scenario(s, "x").is_empty

    def test_keeps_outcome_arity(self):
        s = MeasurementScenario.from_names(["x", "y"], [["x", "y"]], 3)
        sub = induced_scenario(s, "y")
        assert sub.measurements == ("x",)
        assert sub.outcome_arity == 3

    def test_unknown_measurement(self, bell):
        with pytest.raises(DomainError):
            induced_scenario(bell, "Z")


class TestEnumeration:
    def test_bell_has_sixteen(self, bell):
        assert count_protocols(bell) == 16
        protocols = enumerate_protocols(bell)
        assert len(protocols) == 16
        assert len(set(protocols)) == 16

    def test_empty_scenario(self):
        empty = MeasurementScenario((), ())
        assert enumerate_protocols(empty) == [EMPTY_PROTOCOL]
        assert protocol_paths(EMPTY_PROTOCOL) == [()]

    def test_triangle(self, triangle):
        assert count_protocols(triangle) == 12

    def test_single_ternary_context(self):
        s = MeasurementScenario.from_names(["x", "y", "z"], [["x", "y", "z"]], 3)
        assert count_protocols(s) == 24
        assert len(enumerate_protocols(s)) == 24

    def test_cap(self, bell):
        with pytest.raises(CapExceededError) as exc:
            enumerate_protocols(bell, cap=10)
        assert exc.value.what == "protocols"
        assert exc.value.size == 16

    def test_first_measurement_in_label_order(self, bell):
        first = [p.measurement for p in enumerate_protocols(bell)]
        assert first == sorted(first, key=bell.index)


class TestOutcomes:
    def test_every_branch_ends_on_a_context(self, bell):
        xg = exclusivity_graph(bell)
        for protocol in enumerate_protocols(bell):
            outcomes = protocol_outcomes(protocol, bell)
            assert len(outcomes) == 4
            vertices = [xg.vertex_of(event) for _, event in outcomes]
            assert len(set(vertices)) == 4
            # outcomes of one protocol are pairwise exclusive
            for u in vertices:
                for v in vertices:
                    if u != v:
                        assert xg.graph.has_edge(u, v)

    def test_paths_follow_branches(self):
        s = MeasurementScenario.from_names(["x"], [["x"]])
        protocol = MeasurementProtocol("x", (EMPTY_PROTOCOL, EMPTY_PROTOCOL))
        assert protocol_paths(protocol) == [(("x", 0),), (("x", 1),)]
        assert [e for _, e in protocol_outcomes(protocol, s)] == [
            ObservableEvent(0, (0,)), ObservableEvent(0, (1,))]


class TestRealizingEvents:
    def test_event_appears_among_outcomes(self, bell):
        event = ObservableEvent(1, (0, 1))
        protocol = lemma2_protocol(bell, "B1", event)
        assert protocol.measurement == "B1"
        assert event in [e for _, e in protocol_outcomes(protocol, bell)]

    def test_every_event_and_start(self, triangle):
        for event in triangle.all_events():
            for name in triangle.context_names(event.context):
                protocol = lemma2_protocol(triangle, name, event)
                assert protocol.measurement == name
                assert event in [e for _, e in protocol_outcomes(protocol, triangle)]

    def test_name_outside_context(self, bell):
        with pytest.raises(DomainError):
            lemma2_protocol(bell, "A1", ObservableEvent(0, (0, 0)))


class TestHypergraph:
    def test_bell_hyperedges(self, bell):
        hypergraph = contextuality_hypergraph(bell)
        assert len(hypergraph.events) == 16
        assert all(len(hypergraph.hyperedge_events(e)) == 4 for e in hypergraph.hyperedges)

    def test_co_hyperedge_graph_matches_exclusivity(self, bell):
        hypergraph = contextuality_hypergraph(bell)
        assert hypergraph.co_hyperedge_graph() == exclusivity_graph(bell).graph


class TestHyperedgeCheck:
    def test_bell(self, bell):
        check = verify_theorem4(bell)
        assert check.ok
        assert check.protocol_count == 16
        assert check.mismatch is None

    def test_triangle(self, triangle):
        assert verify_theorem4(triangle).ok

    def test_random_scenarios(self):
        rng = random.Random(5)
        for _ in range(50):
            s = random_scenario(rng, 3, outcome_arity=rng.choice((2, 3)))
            check = verify_theorem4(s)
            assert check.ok, s


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
