"""Exact arithmetic in cyclotomic fields Q(w_m).

A CyclotomicNumber is a rational coefficient vector over the power basis
1, w, ..., w^(phi(m)-1). Products are reduced with a per-field table of
w^k (k < m) in that basis, built from the m-th cyclotomic polynomial.
Qubit computations use m = 4 (so i = w); qudits of odd prime dimension d
use m = d.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from sympy import Poly, cyclotomic_poly, symbols, totient

from ..exceptions import DomainError

Scalar = Union[int, Fraction]

_x = symbols("x")


@lru_cache(maxsize=None)
def power_table(m: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """w_m^k for k = 0..m-1, as coefficient vectors in the power basis."""
    if m < 1:
        raise DomainError(f"cyclotomic order must be positive, got {m}")
    phi = int(totient(m))
    modulus = Poly(cyclotomic_poly(m, _x), _x)
    table = []
    for k in range(m):
        rem = Poly(_x ** k, _x).rem(modulus)
        coeffs = [Fraction(0)] * phi
        for (power,), c in zip(rem.monoms(), rem.coeffs()):
            coeffs[power] = Fraction(int(c.p), int(c.q))
        table.append(tuple(coeffs))
    return tuple(table)


def field_order(d: int) -> int:
    """Cyclotomic order used for qudit dimension ``d``."""
    return 4 if d == 2 else d


@dataclass(frozen=True)
class CyclotomicNumber:
    order: int
    coeffs: Tuple[Fraction, ...]

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "CyclotomicNumber":
        return cls(order, (Fraction(0),) * len(power_table(order)[0]))

    @classmethod
    def rational(cls, order: int, value: Scalar) -> "CyclotomicNumber":
        base = [Fraction(0)] * len(power_table(order)[0])
        base[0] = Fraction(value)
        return cls(order, tuple(base))

    @classmethod
    def root(cls, order: int, k: int = 1) -> "CyclotomicNumber":
        """w_order^k."""
        return cls(order, power_table(order)[k % order])

    @classmethod
    def from_powers(cls, order: int, coeffs) -> "CyclotomicNumber":
        """sum_k coeffs[k] w^k for any number of coefficients."""
        table = power_table(order)
        acc = [Fraction(0)] * len(table[0])
        for k, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                for i, t in enumerate(table[k % order]):
                    if t:
                        acc[i] += c * t
        return cls(order, tuple(acc))

    # -- arithmetic -----------------------------------------------------

    def _same(self, other: "CyclotomicNumber") -> None:
        if other.order != self.order:
            raise DomainError(f"mixing cyclotomic orders {self.order} and {other.order}")

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber.from_powers(self.order, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("cyclotomic division by zero")
            return CyclotomicNumber(self.order, tuple(a / other for a in self.coeffs))
        return NotImplemented

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, w -> w^(m-1)."""
        powers = [Fraction(0)] * self.order
        for k, c in enumerate(self.coeffs):
            powers[(-k) % self.order] += c
        return CyclotomicNumber.from_powers(self.order, powers)

    def abs2(self) -> "CyclotomicNumber":
        return self * self.conjugate()

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * w ** k for k, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*w{self.order}^{k}")
        return " + ".join(terms) if terms else "0"
