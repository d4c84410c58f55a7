"""Weyl/Pauli operators, stabilizer projectors, and state vectors.

Matrices are tuples of rows of CyclotomicNumbers over Q(w_m), m from
``field_order(d)``. Conventions, fixed by the tests:

    odd d:  W(p, q) = w^(-h p.q) Z^p X^q with h = 2^-1 mod d,
            Z|j> = w^j |j>, X|j> = |j+1>
    d = 2:  per qubit i^(pq) X^q Z^p, i.e. (p, q) = (1,0) Z, (0,1) X, (1,1) Y

With these, W(a) W(b) = w^(h[a,b]) W(a+b) for odd d, and commutation is
equivalent to [a, b] = 0 in both cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from ..exceptions import DomainError
from .cyclotomic import CyclotomicNumber, field_order
from .phase_space import LagrangianSubspace, PhasePoint, check_dimension, scale

Matrix = Tuple[Tuple[CyclotomicNumber, ...], ...]

_PAULI_LETTERS = {(0, 0): "I", (1, 0): "Z", (0, 1): "X", (1, 1): "Y"}


def pauli_label(a: PhasePoint) -> str:
    """Tensor word over I, X, Y, Z for a qubit phase point."""
    n = len(a) // 2
    return "".join(_PAULI_LETTERS[(a[i] % 2, a[n + i] % 2)] for i in range(n))


def phase_point_of_pauli(word: str) -> PhasePoint:
    inverse = {letter: pq for pq, letter in _PAULI_LETTERS.items()}
    try:
        pairs = [inverse[c] for c in word.upper()]
    except KeyError:
        raise DomainError(f"not a Pauli word: {word!r}")
    return tuple(p for p, _ in pairs) + tuple(q for _, q in pairs)


def weyl_label(a: PhasePoint) -> str:
    """Compact name for an odd-d phase point, e.g. W(10|02)."""
    n = len(a) // 2
    return "W(" + "".join(map(str, a[:n])) + "|" + "".join(map(str, a[n:])) + ")"


# ----------------------------- matrices -----------------------------


def zeros(dim: int, order: int) -> List[List[CyclotomicNumber]]:
    z = CyclotomicNumber.zero(order)
    return [[z] * dim for _ in range(dim)]


def identity(dim: int, order: int) -> Matrix:
    rows = zeros(dim, order)
    one = CyclotomicNumber.rational(order, 1)
    for i in range(dim):
        rows[i][i] = one
    return tuple(tuple(r) for r in rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    dim = len(a)
    order = a[0][0].order
    out = zeros(dim, order)
    for i in range(dim):
        for k in range(dim):
            x = a[i][k]
            if x:
                row_b = b[k]
                out_i = out[i]
                for j in range(dim):
                    y = row_b[j]
                    if y:
                        out_i[j] = out_i[j] + x * y
    return tuple(tuple(r) for r in out)


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(a: Matrix, c) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def adjoint(a: Matrix) -> Matrix:
    dim = len(a)
    return tuple(tuple(a[j][i].conjugate() for j in range(dim)) for i in range(dim))


def trace(a: Matrix) -> CyclotomicNumber:
    total = CyclotomicNumber.zero(a[0][0].order)
    for i in range(len(a)):
        total = total + a[i][i]
    return total


def trace_product(a: Matrix, b: Matrix) -> CyclotomicNumber:
    """tr(AB) without forming the product."""
    total = CyclotomicNumber.zero(a[0][0].order)
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x:
                y = b[j][i]
                if y:
                    total = total + x * y
    return total


def proportionality_constant(a: Matrix, b: Matrix) -> CyclotomicNumber:
    """The c with a = c * b, or raise DomainError."""
    dim = len(a)
    c = None
    for i in range(dim):
        for j in range(dim):
            if b[i][j]:
                # the phases here are roots of unity, so conj(b) / |b|^2 inverts b
                inv = b[i][j].conjugate() / b[i][j].abs2().to_rational()
                c = a[i][j] * inv
                break
        if c is not None:
            break
    if c is None or matscale(b, c) != a:
        raise DomainError("matrices are not proportional")
    return c


# ------------------------------ Weyl --------------------------------


def weyl_matrix(a: PhasePoint, d: int) -> Matrix:
    """The Weyl (d odd) or Pauli (d = 2) operator of phase point ``a``."""
    n = len(a) // 2
    check_dimension(n, d)
    return _weyl(tuple(x % d for x in a), d)


@lru_cache(maxsize=None)
def _weyl(a: PhasePoint, d: int) -> Matrix:
    n = len(a) // 2
    order = field_order(d)
    dim = d ** n
    p, q = a[:n], a[n:]
    rows = zeros(dim, order)
    if d == 2:
        base = sum(pi * qi for pi, qi in zip(p, q))
        for j in itertools.product(range(2), repeat=n):
            target = tuple((ji + qi) % 2 for ji, qi in zip(j, q))
            exponent = base + 2 * sum(pi * ji for pi, ji in zip(p, j))
            rows[_index(target, d)][_index(j, d)] = CyclotomicNumber.root(order, exponent)
    else:
        h = pow(2, -1, d)
        base = -h * sum(pi * qi for pi, qi in zip(p, q))
        for j in itertools.product(range(d), repeat=n):
            target = tuple((ji + qi) % d for ji, qi in zip(j, q))
            exponent = base + sum(pi * ti for pi, ti in zip(p, target))
            rows[_index(target, d)][_index(j, d)] = CyclotomicNumber.root(order, exponent)
    return tuple(tuple(r) for r in rows)


def _index(digits: Sequence[int], d: int) -> int:
    idx = 0
    for x in digits:
        idx = idx * d + x
    return idx


def eigenphase(d: int, k: int) -> CyclotomicNumber:
    """w_d^k inside Q(w_m): the eigenvalue naming outcome k."""
    order = field_order(d)
    return CyclotomicNumber.root(order, (order // d) * k)


# ---------------------------- projectors ----------------------------


def stabilizer_projector(M: LagrangianSubspace, v: PhasePoint) -> Matrix:
    """Projector onto the joint eigenspace of M selected by phase point v.

    For basis vectors b_i of M with k_i = [v, b_i], this is
    prod_i (1/d) sum_j w_d^(-j k_i) W(j b_i): rank one, W(b_i) acting as w_d^(k_i).
    """
    return projector_for_pattern(M, M.outcome_pattern(tuple(x % M.d for x in v)))


@lru_cache(maxsize=None)
def projector_for_pattern(M: LagrangianSubspace, pattern: Tuple[int, ...]) -> Matrix:
    d = M.d
    result = None
    for b, k in zip(M.basis, pattern):
        factor = None
        for j in range(d):
            term = matscale(_weyl(scale(b, j, d), d), eigenphase(d, -j * k))
            factor = term if factor is None else matadd(factor, term)
        factor = matscale(factor, Fraction(1, d))
        result = factor if result is None else matmul(result, factor)
    return result


def measurement_outcome(P: Matrix, a: PhasePoint, d: int) -> int:
    """Outcome k with W(a) P = w_d^k P for a stabilizer projector P."""
    value = trace_product(_weyl(a, d), P)
    for k in range(d):
        if value == eigenphase(d, k):
            return k
    raise DomainError(f"projector is not an eigenstate of the operator at {a}")


# ------------------------------ states ------------------------------


@dataclass(frozen=True)
class StateVector:
    """d^n cyclotomic amplitudes, not necessarily normalized."""
    d: int
    n: int
    amplitudes: Tuple[CyclotomicNumber, ...]

    def __post_init__(self):
        check_dimension(self.n, self.d)
        amps = tuple(self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)
        if len(amps) != self.d ** self.n:
            raise DomainError(f"state on {self.n} qudits of dimension {self.d} needs "
                              f"{self.d ** self.n} amplitudes, got {len(amps)}")
        order = field_order(self.d)
        if any(a.order != order for a in amps):
            raise DomainError(f"amplitudes must live in Q(w_{order})")
        if not any(amps):
            raise DomainError("the zero vector is not a state")

    @classmethod
    def basis_state(cls, d: int, n: int, index: int = 0) -> "StateVector":
        order = field_order(d)
        zero, one = CyclotomicNumber.zero(order), CyclotomicNumber.rational(order, 1)
        return cls(d, n, tuple(one if i == index else zero for i in range(d ** n)))

    @property
    def order(self) -> int:
        return field_order(self.d)

    def norm2(self) -> Fraction:
        total = CyclotomicNumber.zero(self.order)
        for a in self.amplitudes:
            total = total + a.abs2()
        return total.to_rational()

    def expectation(self, P: Matrix) -> CyclotomicNumber:
        """<psi|P|psi>, unnormalized."""
        total = CyclotomicNumber.zero(self.order)
        amps = self.amplitudes
        for i, row in enumerate(P):
            if not amps[i]:
                continue
            acc = CyclotomicNumber.zero(self.order)
            for j, x in enumerate(row):
                if x and amps[j]:
                    acc = acc + x * amps[j]
            if acc:
                total = total + amps[i].conjugate() * acc
        return total

    def probability(self, P: Matrix) -> Fraction:
        """Born probability <psi|P|psi> / <psi|psi>; must be rational."""
        value = self.expectation(P)
        if not value.is_rational():
            raise DomainError(f"Born probability {value} is not rational")
        return value.to_rational() / self.norm2()
