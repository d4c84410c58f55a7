"""Tests for the exact Fraction simplex."""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.exceptions import DomainError
from ctxkit.simplex import LPStatus, maximize


F = Fraction


class TestMaximize:
    def test_box(self):
        result = maximize([1, 1], [[1, 0], [0, 1]], [1, 2])
        assert result.is_optimal
        assert result.value == 3
        assert result.x == (1, 2)

    def test_textbook_vertex(self):
        result = maximize([3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3])
        assert result.value == 11
        assert result.x == (3, 1)

    def test_fractional_optimum_is_exact(self):
        result = maximize([1, 1], [[2, 1], [1, 2]], [1, 1])
        assert result.value == F(2, 3)
        assert result.x == (F(1, 3), F(1, 3))

    def test_equality_constraints(self):
        result = maximize([0, 0], A_eq=[[1, 1], [1, -1]], b_eq=[1, 0])
        assert result.is_optimal
        assert result.x == (F(1, 2), F(1, 2))

    def test_redundant_equalities_are_dropped(self):
        result = maximize([1, 0], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
        assert result.value == 1

    def test_negative_rhs_needs_phase_one(self):
        # x >= 1 written as -x <= -1
        result = maximize([-1], [[-1]], [-1])
        assert result.value == -1
        assert result.x == (1,)


class TestStatus:
    def test_infeasible(self):
        assert maximize([1], [[1]], [-1]).status is LPStatus.INFEASIBLE

    def test_infeasible_equalities(self):
        result = maximize([0, 0], A_eq=[[1, 1], [1, 1]], b_eq=[1, 2])
        assert result.status is LPStatus.INFEASIBLE

    def test_unbounded(self):
        result = maximize([1, 0], [[0, 1]], [1])
        assert result.status is LPStatus.UNBOUNDED
        assert result.value is None

    def test_degenerate_problem_terminates(self):
        rows = [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
        result = maximize([1, 1, 1], rows, [1, 1, 1, 1])
        assert result.value == 1


class TestValidation:
    def test_row_length_mismatch(self):
        with pytest.raises(DomainError):
            maximize([1, 1], [[1]], [1])

    def test_rhs_length_mismatch(self):
        with pytest.raises(DomainError):
            maximize([1], [[1], [1]], [1])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
