"""Tests for logical Bell inequalities and the hierarchy classifier."""

import itertools
import os
import random
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.config import Limits
from ctxkit.exceptions import (
    CtxkitError,
    DomainError,
    NotComputedError,
    ScenarioError,
    SignallingError,
)
from ctxkit.exclusivity import exclusivity_graph
from ctxkit.logic import (
    ClassifyOptions,
    classify,
    consistent_hidden_variables,
    evaluate_csw,
    events_from_hidden_variable,
    hidden_variable_from_events,
    joint_distribution,
    logical_bell_inequality,
    noncontextual_fraction,
    strong_contextuality_inequality,
    verify_lemma1,
    verify_logical_witness,
)
from ctxkit.scenario import (
    CanonicalHiddenVariable,
    EmpiricalModel,
    MeasurementScenario,
    ObservableEvent,
    all_hidden_variables,
    bell_scenario,
    induced_model_of_hidden_variable,
    is_nonsignalling,
    random_scenario,
)
from ctxkit.stabilizer.catalog import bell_table, chsh_weights, ghz, hardy, pr_box


F = Fraction
QUARTER = (F(1, 4),) * 4

slow = pytest.mark.skipif(
    not os.environ.get("CTXKIT_SLOW_TESTS"),
    reason="Set CTXKIT_SLOW_TESTS to run exhaustive inequality checks",
)


def uniform_bell():
    return EmpiricalModel.from_rows(bell_scenario(), [QUARTER] * 4)


def chsh_selection(s):
    """Equal outcomes on the first three contexts, different on the last."""
    return [[e for e in s.events(i) if (e.outcomes[0] != e.outcomes[1]) == (i == 3)]
            for i in range(s.context_count)]


def nonempty_subsets(events):
    return [combo for r in range(1, len(events) + 1)
            for combo in itertools.combinations(events, r)]


def check_plain_inequality(s, full, selection):
    """The tight bound is the most contexts one hidden variable can satisfy."""
    ineq = logical_bell_inequality(s, selection, parent=full)
    hits = max(sum(hv.restrict(s, i) in selection[i] for i in range(s.context_count))
               for hv in all_hidden_variables(s))
    assert ineq.classical_bound == hits, selection
    satisfiable = hits == s.context_count
    assert ineq.is_contradictory() == (not satisfiable), selection
    if not satisfiable:
        assert ineq.classical_bound <= s.context_count - 1
    return ineq


class TestClassify:
    def test_pr_box_is_strongly_contextual(self):
        report = classify(pr_box())
        assert report.support_size == 8
        assert report.independence_number == 3
        assert report.strongly_contextual
        assert report.logically_contextual
        assert report.noncontextual is False
        assert report.noncontextual_fraction == 0
        assert report.witnesses.hidden_variable is None
        assert report.inequality is not None
        assert report.inequality.is_contradictory()

    def test_hardy_is_logically_but_not_strongly_contextual(self):
        report = classify(hardy())
        assert report.support_size == 13
        assert report.independence_number == 4
        assert not report.strongly_contextual
        assert report.logically_contextual
        assert report.witnesses.logical_event == ObservableEvent(0, (0, 0))
        assert report.witnesses.logical_degree == 3
        assert report.witnesses.logical_verified is True
        assert report.witnesses.hidden_variable is not None
        assert 0 < report.noncontextual_fraction < 1
        assert report.inequality is None

    def test_hardy_full_scan(self):
        report = classify(hardy(), ClassifyOptions(full_scan=True))
        assert report.minimal_independence_number == 3

    def test_bell_table_is_only_probabilistically_contextual(self):
        report = classify(bell_table())
        assert report.support_size == 14
        assert not report.strongly_contextual
        assert not report.logically_contextual
        assert report.minimal_independence_number == 4
        assert report.noncontextual is False
        assert report.contextual is True
        assert 0 < report.noncontextual_fraction <= F(3, 4)

    def test_noncontextual_models(self):
        point = induced_model_of_hidden_variable(CanonicalHiddenVariable((0, 1, 1, 0)),
                                                 bell_scenario())
        for model in (uniform_bell(), point):
            report = classify(model)
            assert report.noncontextual is True
            assert report.noncontextual_fraction == 1
            assert report.contextual is False
            assert report.witnesses.joint_distribution is not None

    def test_ghz_is_strongly_contextual(self):
        report = classify(ghz())
        assert report.context_count == 8
        assert report.independence_number < 8
        assert report.strongly_contextual

    def test_signalling_model_rejected(self):
        rows = [(1, 0, 0, 0), (0, 0, 1, 0), QUARTER, QUARTER]
        model = EmpiricalModel.from_rows(bell_scenario(), rows)
        with pytest.raises(SignallingError) as exc:
            classify(model)
        assert exc.value.pair == (0, 1)

    def test_lp_skipped_above_cap(self):
        options = ClassifyOptions(limits=Limits(hidden_variables=8))
        report = classify(bell_table(), options)
        assert report.noncontextual is None
        assert report.noncontextual_fraction is None
        assert report.notes
        assert report.contextual is None

    def test_no_lp(self):
        report = classify(pr_box(), ClassifyOptions(lp=False))
        assert report.noncontextual_fraction is None
        assert report.contextual is True

    def test_csw_in_report(self):
        report = classify(bell_table(), ClassifyOptions(csw_weights=chsh_weights()))
        assert report.csw.value == F(13, 4)
        assert report.csw.classical_bound == 3
        assert report.csw.violated

    def test_threads_do_not_change_verdict(self):
        one = classify(hardy(), ClassifyOptions(limits=Limits(threads=1), full_scan=True))
        four = classify(hardy(), ClassifyOptions(limits=Limits(threads=4), full_scan=True))
        assert one.witnesses.logical_event == four.witnesses.logical_event
        assert one.minimal_independence_number == four.minimal_independence_number

    def test_single_batch_scan_reports_minimal(self):
        # 13 support events, 13 workers: the thresholded scan sees every vertex
        report = classify(hardy(), ClassifyOptions(limits=Limits(threads=13)))
        assert report.minimal_independence_number == 3
        assert report.witnesses.logical_event == ObservableEvent(0, (0, 0))

    def test_empty_scenario_rejected(self):
        empty = EmpiricalModel(MeasurementScenario((), ()), ())
        with pytest.raises(ScenarioError) as exc:
            classify(empty)
        assert "empty scenario" in str(exc.value)

    def test_hidden_variable_witness_hits_possible_events(self):
        mixed = hardy().mixture(bell_table(), F(2, 5))
        for model in (bell_table(), hardy(), uniform_bell(), mixed):
            s = model.scenario
            hv = classify(model).witnesses.hidden_variable
            assert hv is not None
            for i in range(s.context_count):
                assert model.is_possible(hv.restrict(s, i))

    def test_logical_witness_blocks_every_extension(self):
        model = hardy()
        s = model.scenario
        event = classify(model).witnesses.logical_event
        extensions = [hv for hv in all_hidden_variables(s)
                      if hv.restrict(s, event.context) == event]
        assert extensions
        for hv in extensions:
            assert any(not model.is_possible(hv.restrict(s, i))
                       for i in range(s.context_count))


class TestHierarchyConsistency:
    """Strong => logical => contextual, and tau = 0 exactly when strong."""

    def test_mixtures_with_pr_box(self):
        for weight in (F(0), F(1, 3), F(1, 2), F(1)):
            model = pr_box().mixture(uniform_bell(), weight)
            report = classify(model)
            tau = report.noncontextual_fraction
            assert (tau == 0) == report.strongly_contextual
            if report.logically_contextual:
                assert report.noncontextual is False
            if report.strongly_contextual:
                assert report.logically_contextual

    def test_mixture_tau(self):
        # half PR box, half uniform: the uniform half is noncontextual
        model = pr_box().mixture(uniform_bell(), F(1, 2))
        assert noncontextual_fraction(model) >= F(1, 2)

    def test_random_rational_mixtures(self):
        s = bell_scenario()
        models = [pr_box(), bell_table(), hardy(), uniform_bell(),
                  induced_model_of_hidden_variable(CanonicalHiddenVariable((1, 0, 1, 1)), s)]
        rng = random.Random(3)
        for _ in range(25):
            first, second = rng.choice(models), rng.choice(models)
            q = rng.randint(1, 24)
            weight = F(rng.randint(0, q), q)
            model = first.mixture(second, weight)
            assert is_nonsignalling(model), weight
            report = classify(model)
            assert (report.noncontextual_fraction == 0) == report.strongly_contextual
            if report.strongly_contextual:
                assert report.logically_contextual


class TestCSW:
    def test_chsh_values(self):
        assert evaluate_csw(bell_table(), chsh_weights()).value == F(13, 4)
        pr = evaluate_csw(pr_box(), chsh_weights())
        assert pr.value == 4
        assert pr.classical_bound == 3
        assert len(pr.bound_witness) == 3

    def test_classical_model_never_violates(self):
        assert not evaluate_csw(uniform_bell(), chsh_weights()).violated

    def test_deterministic_models_never_violate(self):
        s = bell_scenario()
        for hv in all_hidden_variables(s):
            result = evaluate_csw(induced_model_of_hidden_variable(hv, s), chsh_weights())
            assert result.value <= 3, hv
            assert not result.violated

    def test_negative_weight_rejected(self):
        with pytest.raises(DomainError):
            evaluate_csw(pr_box(), {ObservableEvent(0, (0, 0)): -1})


class TestLogicalBellInequality:
    def test_chsh_as_logical_inequality(self):
        s = bell_scenario()
        ineq = logical_bell_inequality(s, chsh_selection(s))
        assert ineq.classical_bound == 3
        assert ineq.ceiling == 4
        assert ineq.is_plain
        assert ineq.is_contradictory()
        assert ineq.violated_by(pr_box())
        assert ineq.value(bell_table()) == F(13, 4)

    def test_extended_coefficients(self):
        s = bell_scenario()
        ineq = logical_bell_inequality(s, chsh_selection(s), [2, 1, 1, 1])
        assert ineq.classical_bound == 4
        assert ineq.ceiling == 5
        assert not ineq.is_plain

    def test_event_in_wrong_context(self):
        s = bell_scenario()
        selection = chsh_selection(s)
        selection[0] = [ObservableEvent(1, (0, 0))]
        with pytest.raises(DomainError):
            logical_bell_inequality(s, selection)

    def test_bad_coefficients(self):
        s = bell_scenario()
        with pytest.raises(DomainError):
            logical_bell_inequality(s, chsh_selection(s), [1, 1, 1])
        with pytest.raises(DomainError):
            logical_bell_inequality(s, chsh_selection(s), [1, 1, 1, -1])

    def test_strong_contextuality_inequality(self):
        ineq = strong_contextuality_inequality(pr_box())
        assert ineq.classical_bound == 3
        assert ineq.value(pr_box()) == 4


class TestPlainInequalityBounds:
    """A plain inequality is contradictory exactly when no hidden variable meets every E_i."""

    def test_sampled_bell_selections(self):
        s = bell_scenario()
        full = exclusivity_graph(s)
        choices = [nonempty_subsets(s.events(i)) for i in range(s.context_count)]
        rng = random.Random(17)
        for _ in range(200):
            check_plain_inequality(s, full, [rng.choice(c) for c in choices])

    def test_random_scenarios(self):
        rng = random.Random(23)
        for _ in range(30):
            s = random_scenario(rng, 3)
            full = exclusivity_graph(s)
            selection = [rng.choice(nonempty_subsets(s.events(i)))
                         for i in range(s.context_count)]
            check_plain_inequality(s, full, selection)

    @slow
    def test_every_bell_selection(self):
        s = bell_scenario()
        full = exclusivity_graph(s)
        choices = [nonempty_subsets(s.events(i)) for i in range(s.context_count)]
        contradictory = 0
        for selection in itertools.product(*choices):
            contradictory += check_plain_inequality(s, full, selection).is_contradictory()
        assert contradictory > 0


class TestHiddenVariables:
    def test_round_trip(self):
        s = bell_scenario()
        hv = CanonicalHiddenVariable((1, 0, 0, 1))
        events = events_from_hidden_variable(s, hv)
        assert len(events) == 4
        assert hidden_variable_from_events(s, events) == hv

    def test_inconsistent_events(self):
        s = bell_scenario()
        with pytest.raises(DomainError):
            hidden_variable_from_events(s, [ObservableEvent(0, (0, 0)), ObservableEvent(1, (1, 0))])

    def test_too_few_events(self):
        s = bell_scenario()
        with pytest.raises(DomainError):
            hidden_variable_from_events(s, [ObservableEvent(0, (0, 0)), ObservableEvent(3, (1, 1))])

    def test_consistent_hidden_variables(self):
        assert list(consistent_hidden_variables(pr_box())) == []
        assert len(list(consistent_hidden_variables(uniform_bell()))) == 16

    def test_logical_witness(self):
        assert verify_logical_witness(hardy(), ObservableEvent(0, (0, 0)))
        assert not verify_logical_witness(hardy(), ObservableEvent(0, (1, 1)))

    def test_joint_distribution(self):
        assert joint_distribution(pr_box()) is None
        joint = joint_distribution(uniform_bell())
        assert sum(joint.values()) == 1

    def test_lp_cap(self):
        with pytest.raises(NotComputedError) as exc:
            noncontextual_fraction(bell_table(), cap=8)
        assert exc.value.what == "hidden variables"


class TestLemma1:
    def test_bell(self):
        check = verify_lemma1(bell_scenario())
        assert check.ok
        assert check.checked == 16
        assert check.alpha == 4

    def test_random_scenarios(self):
        rng = random.Random(11)
        for _ in range(100):
            arity = rng.choice((2, 3))
            s = random_scenario(rng, 3, outcome_arity=arity)
            check = verify_lemma1(s)
            assert check.ok, s
            assert check.checked == s.hidden_variable_count

    def test_cap(self):
        with pytest.raises(NotComputedError):
            verify_lemma1(bell_scenario(), cap=15)


class TestReportInvariants:
    def test_inconsistent_report_rejected(self):
        report = classify(pr_box())
        with pytest.raises(CtxkitError):
            type(report)(**{**report.__dict__, "logically_contextual": False})


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
