"""Tests for the discrete phase space and Lagrangian enumeration."""

import itertools
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.exceptions import CapExceededError, DomainError
from ctxkit.stabilizer.phase_space import (
    LagrangianSubspace,
    all_points,
    canonical_point,
    check_dimension,
    enumerate_lagrangians,
    rref,
    symplectic_product,
)


class TestSymplecticForm:
    def test_single_qubit(self):
        z, x = (1, 0), (0, 1)
        assert symplectic_product(z, x, 2) == 1
        assert symplectic_product(z, z, 2) == 0

    def test_antisymmetric(self):
        for a, b in itertools.product(all_points(1, 3), repeat=2):
            assert symplectic_product(a, b, 3) == (-symplectic_product(b, a, 3)) % 3

    def test_two_qudits(self):
        # ZZ and XX commute; ZI and XI do not
        assert symplectic_product((1, 1, 0, 0), (0, 0, 1, 1), 2) == 0
        assert symplectic_product((1, 0, 0, 0), (0, 0, 1, 0), 2) == 1


class TestPoints:
    def test_canonical_point(self):
        assert canonical_point((0, 2), 3) == (0, 1)
        assert canonical_point((2, 1), 3) == (1, 2)

    def test_zero_point_names_nothing(self):
        with pytest.raises(DomainError):
            canonical_point((0, 0), 3)

    def test_rref(self):
        assert rref([(1, 1), (2, 2)], 3) == ((1, 1),)
        assert rref([(0, 1), (1, 0)], 2) == ((1, 0), (0, 1))
        assert rref([], 2) == ()

    def test_check_dimension(self):
        check_dimension(2, 3)
        with pytest.raises(DomainError):
            check_dimension(1, 4)
        with pytest.raises(DomainError):
            check_dimension(0, 2)


class TestLagrangians:
    @pytest.mark.parametrize("n,d,count", [(1, 2, 3), (1, 3, 4), (1, 5, 6), (2, 2, 15), (2, 3, 40)])
    def test_counts(self, n, d, count):
        assert len(enumerate_lagrangians(n, d)) == count

    def test_subspaces_are_isotropic(self):
        for L in enumerate_lagrangians(2, 2):
            points = L.points()
            assert len(points) == 4
            for a, b in itertools.combinations(points, 2):
                assert symplectic_product(a, b, 2) == 0

    def test_measurements_per_context(self):
        for L in enumerate_lagrangians(2, 3):
            assert len(L.measurements()) == 4
        for L in enumerate_lagrangians(2, 2):
            assert len(L.measurements()) == 3

    def test_contains(self):
        L = LagrangianSubspace.spanned_by([(1, 1, 0, 0), (0, 0, 1, 1)], 2)
        assert L.contains((1, 1, 1, 1))
        assert not L.contains((1, 0, 0, 0))

    def test_outcome_pattern(self):
        L = LagrangianSubspace.spanned_by([(1, 0)], 3)
        assert L.outcome_pattern((0, 1)) == (2,)
        assert L.outcome_pattern((0, 2)) == (1,)
        assert L.outcome_pattern((1, 0)) == (0,)

    def test_non_commuting_basis_rejected(self):
        with pytest.raises(DomainError):
            LagrangianSubspace(2, 2, ((1, 0, 0, 0), (0, 0, 1, 0)))

    def test_cap(self):
        with pytest.raises(CapExceededError) as exc:
            enumerate_lagrangians(3, 3, cap=100)
        assert exc.value.size == 729


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
