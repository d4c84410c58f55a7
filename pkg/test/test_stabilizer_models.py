"""Tests for stabilizer scenarios and their Born-rule models.

The two-qutrit cases take minutes; set CTXKIT_SLOW_TESTS=1 to run them.
"""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.exceptions import CapExceededError, DomainError
from ctxkit.exclusivity import exclusivity_graph, support_graph
from ctxkit.graphs import independence_number
from ctxkit.logic import ClassifyOptions, classify
from ctxkit.scenario import is_nonsignalling
from ctxkit.stabilizer import (
    MixedState,
    StateVector,
    cs_state,
    maximally_mixed,
    numeric_orthogonality_agrees,
    product_measurement_model,
    product_stabilizer_state,
    projector_overlap_spectrum,
    quantum_empirical_model,
    stabilizer_scenario,
)

slow = pytest.mark.skipif(
    not os.environ.get('CTXKIT_SLOW_TESTS'),
    reason="Set CTXKIT_SLOW_TESTS to run the two-qutrit tests",
)


class TestStabilizerScenario:
    def test_single_qubit(self):
        ss = stabilizer_scenario(1, 2)
        assert ss.scenario.measurements == ("X", "Z", "Y")
        assert ss.scenario.contexts == ((0,), (1,), (2,))

    def test_two_qubits(self):
        ss = stabilizer_scenario(2, 2)
        s = ss.scenario
        assert len(s.measurements) == 15
        assert s.context_count == 15
        assert all(len(ctx) == 3 for ctx in s.contexts)
        assert exclusivity_graph(s).n == 120
        assert len(ss.quantum_events()) == 60

    def test_single_qutrit(self):
        ss = stabilizer_scenario(1, 3)
        assert len(ss.scenario.measurements) == 4
        assert ss.scenario.outcome_arity == 3
        assert len(ss.quantum_events()) == 12

    def test_phase_space_cap(self):
        with pytest.raises(CapExceededError):
            stabilizer_scenario(2, 3, cap=80)

    @slow
    def test_two_qutrits(self):
        ss = stabilizer_scenario(2, 3)
        assert ss.scenario.context_count == 40
        assert len(ss.quantum_events()) == 360


class TestQuantumModels:
    def test_maximally_mixed_single_qubit(self):
        model = quantum_empirical_model(maximally_mixed(1, 2), 1, 2)
        assert all(row == (Fraction(1, 2), Fraction(1, 2)) for row in model.tables)
        report = classify(model)
        assert report.noncontextual is True

    def test_rows_are_normalized_and_nonsignalling(self):
        model = quantum_empirical_model(product_stabilizer_state(2, 2), 2, 2)
        assert is_nonsignalling(model)
        for row in model.tables:
            assert sum(row) == 1
            assert sum(1 for p in row if p) in (1, 2, 4)

    def test_two_qubit_maximally_mixed_state(self):
        model = quantum_empirical_model(maximally_mixed(2, 2), 2, 2)
        support = support_graph(model)
        assert support.n == 60
        assert independence_number(support.graph, clique_cover=support.clique_cover()).value == 12
        report = classify(model)
        assert report.independence_number == 12
        assert report.strongly_contextual
        assert report.logically_contextual
        assert report.noncontextual_fraction == 0

    def test_every_two_qubit_state_is_strongly_contextual(self):
        report = classify(quantum_empirical_model(product_stabilizer_state(2, 2), 2, 2))
        assert report.strongly_contextual
        assert report.noncontextual_fraction == 0

    def test_single_qutrit_is_noncontextual(self):
        report = classify(quantum_empirical_model(maximally_mixed(1, 3), 1, 3))
        assert report.independence_number == 4
        assert report.noncontextual is True

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            quantum_empirical_model(maximally_mixed(1, 2), 2, 2)

    @slow
    def test_cs_state(self):
        model = quantum_empirical_model(cs_state(), 2, 3)
        support = support_graph(model)
        assert independence_number(support.graph, clique_cover=support.clique_cover()).value == 34

    @slow
    def test_two_qutrit_stabilizer_state_extends_everywhere(self):
        model = quantum_empirical_model(product_stabilizer_state(2, 3), 2, 3)
        report = classify(model, ClassifyOptions(full_scan=True, lp=False))
        assert report.minimal_independence_number == 40
        assert not report.logically_contextual
        assert not report.strongly_contextual


class TestMixedState:
    def test_weights_must_sum_to_one(self):
        psi = StateVector.basis_state(2, 1, 0)
        with pytest.raises(DomainError):
            MixedState(((Fraction(1, 2), psi),))

    def test_components_share_a_system(self):
        with pytest.raises(DomainError):
            MixedState(((Fraction(1, 2), StateVector.basis_state(2, 1, 0)),
                        (Fraction(1, 2), StateVector.basis_state(3, 1, 0))))

    def test_maximally_mixed(self):
        rho = maximally_mixed(2, 2)
        assert (rho.n, rho.d) == (2, 2)
        assert len(rho.components) == 4


class TestProductMeasurements:
    def test_bell_pair(self):
        phi = StateVector.basis_state(2, 2, 0)
        model = product_measurement_model(phi, [("Z", "X"), ("Z", "X")], parties=["A", "B"])
        assert model.scenario.measurements == ("A_Z", "A_X", "B_Z", "B_X")
        assert model.tables[0] == (1, 0, 0, 0)
        assert model.tables[3] == (Fraction(1, 4),) * 4

    def test_qutrits_rejected(self):
        with pytest.raises(DomainError):
            product_measurement_model(StateVector.basis_state(3, 1, 0), [("X",)])

    def test_party_count(self):
        with pytest.raises(DomainError):
            product_measurement_model(StateVector.basis_state(2, 2, 0), [("X",)])


class TestCrossChecks:
    @pytest.mark.parametrize("n,d", [(1, 2), (1, 3), (2, 2), pytest.param(2, 3, marks=slow)])
    def test_orthogonality_matches_exclusivity(self, n, d):
        check = numeric_orthogonality_agrees(n, d)
        assert check.ok
        assert check.checked_pairs > 0
        assert check.mismatch is None

    def test_overlap_spectra(self):
        assert projector_overlap_spectrum(1, 2) == [0, Fraction(1, 2)]
        assert projector_overlap_spectrum(1, 3) == [0, Fraction(1, 3)]
        assert projector_overlap_spectrum(2, 2) == [0, Fraction(1, 4), Fraction(1, 2)]

    @slow
    def test_two_qutrit_spectrum(self):
        assert projector_overlap_spectrum(2, 3) == [0, Fraction(1, 9), Fraction(1, 3)]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
