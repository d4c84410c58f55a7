"""Tests for bitset graphs and the exact independence solvers."""

import itertools
import os
import random
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.exceptions import CapExceededError, DomainError
from ctxkit.graphs import (
    Graph,
    bits,
    clique_cover_bound,
    fractional_packing_number,
    independence_degree,
    independence_number,
    mask_of,
    maximal_cliques,
    minimal_independence_number,
)


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(rng, max_vertices=12):
    n = rng.randint(1, max_vertices)
    density = rng.random()
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < density]
    return Graph.from_edges(n, edges)


def brute_alpha(g, weights=None, containing=None):
    ws = weights or [1] * g.n
    best = 0
    for mask in range(1 << g.n):
        if containing is not None and not mask >> containing & 1:
            continue
        vs = list(bits(mask))
        if g.is_independent(vs):
            best = max(best, sum(ws[v] for v in vs))
    return best


@pytest.fixture
def rng():
    return random.Random(20240611)


class TestGraph:
    def test_bits_and_mask(self):
        assert list(bits(0b10110)) == [1, 2, 4]
        assert mask_of([1, 2, 4]) == 0b10110

    def test_from_edges_is_symmetric(self):
        g = Graph.from_edges(3, [(0, 2)])
        assert g.has_edge(0, 2) and g.has_edge(2, 0)
        assert not g.has_edge(0, 1)
        assert g.edges() == [(0, 2)]
        assert g.edge_count() == 1

    def test_complement(self):
        g = cycle(5).complement()
        assert g.edge_count() == 5
        assert g.has_edge(0, 2)
        assert not g.has_edge(0, 1)

    def test_complete_and_empty(self):
        assert Graph.complete(4).edge_count() == 6
        assert Graph.empty(4).edge_count() == 0

    def test_induced_renumbers(self):
        g = cycle(5).induced([0, 2, 3])
        assert g.n == 3
        assert g.edges() == [(1, 2)]

    def test_self_loop_rejected(self):
        with pytest.raises(DomainError):
            Graph.from_edges(2, [(1, 1)])

    def test_edge_outside_graph_rejected(self):
        with pytest.raises(DomainError):
            Graph.from_edges(2, [(0, 2)])

    def test_networkx_view(self):
        nxg = cycle(4).to_networkx()
        assert nxg.number_of_nodes() == 4
        assert nxg.number_of_edges() == 4


class TestIndependenceNumber:
    def test_cycle(self):
        result = independence_number(cycle(5))
        assert result.value == 2
        assert cycle(5).is_independent(result.witness)

    def test_canonical_witness_is_lexicographically_smallest(self):
        assert independence_number(cycle(4)).witness == (0, 2)
        assert independence_number(cycle(5)).witness == (0, 2)

    def test_complete_and_empty(self):
        assert independence_number(Graph.complete(6)).value == 1
        assert independence_number(Graph.empty(6)).value == 6
        assert independence_number(Graph.empty(0)).value == 0

    def test_weighted_path(self):
        path = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert independence_number(path, [1, 3, 1]).witness == (1,)
        result = independence_number(path, [2, 3, 2])
        assert result.value == 4
        assert result.witness == (0, 2)

    def test_rational_weights(self):
        path = Graph.from_edges(3, [(0, 1), (1, 2)])
        result = independence_number(path, [Fraction(1, 2), Fraction(2, 3), Fraction(1, 3)])
        assert result.value == Fraction(5, 6)

    def test_zero_weight_vertices_never_in_witness(self):
        result = independence_number(Graph.empty(3), [1, 0, 1])
        assert result.value == 2
        assert result.witness == (0, 2)

    def test_candidates_restrict_search(self):
        result = independence_number(Graph.empty(5), candidates=0b00110)
        assert result.value == 2
        assert result.witness == (1, 2)

    def test_goal_stops_early(self):
        result = independence_number(Graph.empty(10), goal=3)
        assert result.value >= 3

    def test_clique_cover_bound_is_respected(self):
        g = Graph.complete(3)
        assert independence_number(g, clique_cover=[0b111]).value == 1
        assert clique_cover_bound(g, [0b011]) == 2

    def test_negative_weight_rejected(self):
        with pytest.raises(DomainError):
            independence_number(Graph.empty(2), [1, -1])

    def test_weight_count_mismatch(self):
        with pytest.raises(DomainError):
            independence_number(Graph.empty(2), [1])

    def test_vertex_cap(self):
        with pytest.raises(CapExceededError) as exc:
            independence_number(Graph.empty(5), vertex_cap=4)
        assert exc.value.cap == 4
        assert exc.value.size == 5

    def test_matches_brute_force(self, rng):
        for _ in range(200):
            g = random_graph(rng)
            result = independence_number(g)
            assert result.value == brute_alpha(g)
            assert g.is_independent(result.witness)
            assert len(result.witness) == result.value

    def test_weighted_matches_brute_force(self, rng):
        for _ in range(60):
            g = random_graph(rng, max_vertices=10)
            weights = [rng.randint(0, 4) for _ in range(g.n)]
            assert independence_number(g, weights).value == brute_alpha(g, weights)


class TestIndependenceDegree:
    def test_path_ends_and_middle(self):
        path = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert independence_degree(path, 0).value == 2
        assert independence_degree(path, 1).value == 1
        assert 1 in independence_degree(path, 1).witness

    def test_unknown_vertex(self):
        with pytest.raises(DomainError):
            independence_degree(Graph.empty(2), 5)

    def test_matches_brute_force(self, rng):
        for _ in range(40):
            g = random_graph(rng, max_vertices=10)
            v = rng.randrange(g.n)
            result = independence_degree(g, v)
            assert result.value == brute_alpha(g, containing=v)
            assert v in result.witness
            assert g.is_independent(result.witness)


class TestMinimalIndependence:
    def test_star(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        result = minimal_independence_number(star)
        assert result.value == 1
        assert result.vertex == 0
        assert result.exhaustive

    def test_threshold_stops_at_first_vertex_below(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        result = minimal_independence_number(star, threshold=3)
        assert result.value < 3
        assert not result.exhaustive

    def test_threshold_hit_in_last_batch_is_exact(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        result = minimal_independence_number(star, threshold=3, threads=4)
        assert result.value == 1
        assert result.vertex == 0
        assert result.exhaustive

    def test_threshold_hit_in_last_batch_matches_full_scan(self, rng):
        for _ in range(40):
            g = random_graph(rng, max_vertices=8)
            stopped = minimal_independence_number(g, threshold=g.n, threads=g.n)
            assert stopped.exhaustive
            assert stopped.value == minimal_independence_number(g).value

    def test_threshold_never_met_keeps_exact_value(self):
        result = minimal_independence_number(cycle(5), threshold=2)
        assert result.value == 2
        assert result.exhaustive

    def test_empty_graph_rejected(self):
        with pytest.raises(DomainError):
            minimal_independence_number(Graph.empty(0))

    def test_thread_count_does_not_change_result(self, rng):
        for _ in range(20):
            g = random_graph(rng, max_vertices=10)
            one = minimal_independence_number(g, threads=1)
            four = minimal_independence_number(g, threads=4)
            assert (one.value, one.vertex) == (four.value, four.vertex)

    def test_matches_brute_force(self, rng):
        for _ in range(40):
            g = random_graph(rng, max_vertices=10)
            expected = min(brute_alpha(g, containing=v) for v in range(g.n))
            assert minimal_independence_number(g).value == expected


class TestCliquesAndPacking:
    def test_maximal_cliques(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert maximal_cliques(g) == [(0, 1, 2), (2, 3)]

    def test_pentagon_packing(self):
        assert fractional_packing_number(cycle(5)) == Fraction(5, 2)

    def test_complete_graph_packing(self):
        assert fractional_packing_number(Graph.complete(4)) == 1

    def test_zero_weights(self):
        assert fractional_packing_number(Graph.empty(3), [0, 0, 0]) == 0

    def test_packing_bounds_alpha(self, rng):
        for _ in range(50):
            g = random_graph(rng, max_vertices=10)
            alpha = independence_number(g).value
            packing = fractional_packing_number(g)
            assert alpha <= packing <= g.n


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
