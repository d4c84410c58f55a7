"""Tests for exact cyclotomic arithmetic."""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit.exceptions import DomainError
from ctxkit.stabilizer.cyclotomic import CyclotomicNumber, field_order, power_table


C = CyclotomicNumber


class TestPowerTable:
    def test_gaussian(self):
        table = power_table(4)
        assert len(table) == 4
        assert table[2] == (Fraction(-1), Fraction(0))

    def test_cube_roots(self):
        # w^2 = -1 - w in Q(w_3)
        assert power_table(3)[2] == (Fraction(-1), Fraction(-1))

    def test_bad_order(self):
        with pytest.raises(DomainError):
            power_table(0)

    def test_field_order(self):
        assert field_order(2) == 4
        assert field_order(3) == 3
        assert field_order(5) == 5


class TestArithmetic:
    def test_i_squared(self):
        i = C.root(4)
        assert i * i == C.rational(4, -1)

    def test_roots_sum_to_zero(self):
        for m in (3, 5, 7):
            total = C.zero(m)
            for k in range(m):
                total = total + C.root(m, k)
            assert total.is_zero()

    def test_root_powers_wrap(self):
        assert C.root(5, 7) == C.root(5, 2)
        assert C.root(3, -1) == C.root(3, 2)

    def test_scalar_mixing(self):
        w = C.root(3)
        assert (w + 1) - 1 == w
        assert 2 * w == w + w
        assert (w * Fraction(1, 2)) / Fraction(1, 2) == w
        assert 1 - w == -(w - 1)

    def test_conjugate_and_abs2(self):
        w = C.root(3)
        assert w.conjugate() == C.root(3, 2)
        assert w.abs2() == C.rational(3, 1)
        assert (w + 1).abs2().to_rational() == 1

    def test_from_powers(self):
        assert C.from_powers(4, [0, 0, 1]) == C.rational(4, -1)
        assert C.from_powers(3, [1, 1, 1]).is_zero()

    def test_to_complex(self):
        z = C.root(4).to_complex()
        assert abs(z - 1j) < 1e-12

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            C.root(3) / 0

    def test_mixed_orders(self):
        with pytest.raises(DomainError):
            C.root(3) + C.root(4)

    def test_to_rational(self):
        assert C.rational(5, Fraction(2, 3)).to_rational() == Fraction(2, 3)
        with pytest.raises(DomainError):
            C.root(5).to_rational()

    def test_bool_and_str(self):
        assert not C.zero(3)
        assert C.root(3)
        assert str(C.zero(3)) == "0"
        assert str(C.rational(3, 2)) == "2"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
