"""Tests for the named models and states."""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.exceptions import DomainError, ParseError
from ctxkit.scenario import EmpiricalModel, ObservableEvent, bell_scenario, is_nonsignalling
from ctxkit.stabilizer import StateVector
from ctxkit.stabilizer.catalog import (
    CATALOG_NAMES,
    catalog_state,
    chsh_weights,
    cs_state,
    ghz,
    ghz_state,
    product_stabilizer_state,
)


class TestCatalog:
    @pytest.mark.parametrize("name", ["bell_table", "pr_box", "hardy"])
    def test_tables_are_nonsignalling_bell_models(self, name):
        model = catalog_state(name)
        assert isinstance(model, EmpiricalModel)
        assert model.scenario == bell_scenario()
        assert is_nonsignalling(model)

    def test_names(self):
        assert "ghz" in CATALOG_NAMES
        assert "file:PATH" in CATALOG_NAMES

    def test_unknown_name(self):
        with pytest.raises(DomainError, match="unknown catalog entry"):
            catalog_state("w_state")

    def test_cs_state_is_a_unit_vector(self):
        psi = catalog_state("cs_state")
        assert isinstance(psi, StateVector)
        assert (psi.n, psi.d) == (2, 3)
        assert psi.norm2() == 1
        assert psi == cs_state()

    def test_file_entry(self, tmp_path):
        path = tmp_path / "plus.amp"
        path.write_text("cyclotomic m=4 dim=2\n0: 1\n1: 1\n")
        psi = catalog_state(f"file:{path}")
        assert (psi.n, psi.d) == (1, 2)
        assert psi.norm2() == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            catalog_state(f"file:{tmp_path / 'nope.amp'}")


class TestGhz:
    def test_state(self):
        psi = ghz_state()
        assert psi.norm2() == 2
        assert sum(1 for a in psi.amplitudes if a) == 2

    def test_model_shape(self):
        model = ghz()
        assert len(model.scenario.measurements) == 6
        assert model.scenario.context_count == 8
        assert is_nonsignalling(model)

    def test_xxx_has_even_parity(self):
        model = ghz()
        xxx = model.scenario.context_index(["A_X", "B_X", "C_X"])
        for event in model.possible_events(xxx):
            assert sum(event.outcomes) % 2 == 0


class TestHelpers:
    def test_chsh_weights(self):
        weights = chsh_weights()
        assert len(weights) == 8
        assert weights[ObservableEvent(3, (0, 1))] == 1
        assert ObservableEvent(3, (0, 0)) not in weights
        assert all(w == Fraction(1) for w in weights.values())

    def test_product_state(self):
        psi = product_stabilizer_state(2, 3)
        assert psi.amplitudes[0].to_rational() == 1
        assert psi.norm2() == 1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
