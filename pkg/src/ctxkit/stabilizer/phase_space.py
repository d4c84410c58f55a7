"""Discrete phase space (Z_d)^(2n) and its Lagrangian subspaces.

A phase point is a tuple (p_1, ..., p_n, q_1, ..., q_n) of residues mod d.
The symplectic form is [a, b] = sum_i (p_i q'_i - q_i p'_i) mod d. Two
Weyl operators commute iff their phase points have symplectic product 0,
so the maximal commuting families (contexts) are the Lagrangian subspaces:
n-dimensional subspaces on which the form vanishes.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from sympy import isprime

from ..config import DEFAULT_PHASE_SPACE_CAP
from ..exceptions import CapExceededError, DomainError

logger = logging.getLogger(__name__)

PhasePoint = Tuple[int, ...]


def check_dimension(n: int, d: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"number of qudits must be a positive integer, got {n!r}")
    if isinstance(d, bool) or not isinstance(d, int) or not isprime(d):
        raise DomainError(f"qudit dimension must be prime, got {d!r}")


def symplectic_product(a: PhasePoint, b: PhasePoint, d: int) -> int:
    n = len(a) // 2
    return sum(a[i] * b[n + i] - a[n + i] * b[i] for i in range(n)) % d


def add(a: PhasePoint, b: PhasePoint, d: int) -> PhasePoint:
    return tuple((x + y) % d for x, y in zip(a, b))


def scale(a: PhasePoint, k: int, d: int) -> PhasePoint:
    return tuple((k * x) % d for x in a)


def is_zero(a: PhasePoint) -> bool:
    return not any(a)


def canonical_point(a: PhasePoint, d: int) -> PhasePoint:
    """Scale so the first nonzero coordinate is 1; a and ka name one measurement."""
    for x in a:
        if x:
            return scale(a, pow(x, -1, d), d)
    raise DomainError("the zero phase point names no measurement")


def all_points(n: int, d: int) -> List[PhasePoint]:
    return list(itertools.product(range(d), repeat=2 * n))


def rref(vectors: Iterable[PhasePoint], d: int) -> Tuple[PhasePoint, ...]:
    """Reduced row echelon basis of the span, mod prime d; zero rows dropped."""
    rows = [list(v) for v in vectors]
    if not rows:
        return ()
    width = len(rows[0])
    pivot_row = 0
    for col in range(width):
        pick = next((r for r in range(pivot_row, len(rows)) if rows[r][col] % d), None)
        if pick is None:
            continue
        rows[pivot_row], rows[pick] = rows[pick], rows[pivot_row]
        inv = pow(rows[pivot_row][col], -1, d)
        rows[pivot_row] = [(x * inv) % d for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] % d:
                f = rows[r][col]
                rows[r] = [(x - f * y) % d for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return tuple(tuple(r) for r in rows[:pivot_row])


@dataclass(frozen=True)
class LagrangianSubspace:
    """A Lagrangian subspace held by its reduced row echelon basis."""
    n: int
    d: int
    basis: Tuple[PhasePoint, ...]

    def __post_init__(self):
        if len(self.basis) != self.n:
            raise DomainError(f"Lagrangian subspace needs {self.n} basis vectors, got {len(self.basis)}")
        if rref(self.basis, self.d) != tuple(self.basis):
            raise DomainError("basis is not in reduced row echelon form")
        for a, b in itertools.combinations(self.basis, 2):
            if symplectic_product(a, b, self.d):
                raise DomainError(f"basis vectors {a} and {b} do not commute")

    @classmethod
    def spanned_by(cls, vectors: Sequence[PhasePoint], d: int) -> "LagrangianSubspace":
        return cls(len(vectors[0]) // 2, d, rref(vectors, d))

    def points(self) -> List[PhasePoint]:
        zero = (0,) * (2 * self.n)
        out = []
        for coeffs in itertools.product(range(self.d), repeat=self.n):
            v = zero
            for c, b in zip(coeffs, self.basis):
                v = add(v, scale(b, c, self.d), self.d)
            out.append(v)
        return out

    def measurements(self) -> List[PhasePoint]:
        """Canonical phase points of the measurements in this context, sorted."""
        return sorted({canonical_point(v, self.d) for v in self.points() if not is_zero(v)})

    def contains(self, a: PhasePoint) -> bool:
        return rref(self.basis + (tuple(x % self.d for x in a),), self.d) == self.basis

    def outcome_pattern(self, v: PhasePoint) -> Tuple[int, ...]:
        """k_i = [v, b_i] for the basis vectors; labels the coset of v."""
        return tuple(symplectic_product(v, b, self.d) for b in self.basis)


def enumerate_lagrangians(n: int, d: int, *, cap: int = DEFAULT_PHASE_SPACE_CAP
                          ) -> List[LagrangianSubspace]:
    """All Lagrangian subspaces of (Z_d)^(2n), sorted by canonical basis.

    Grows isotropic subspaces one vector at a time and deduplicates every
    level by reduced row echelon form.
    """
    return list(_lagrangians(n, d, cap))


@lru_cache(maxsize=None)
def _lagrangians(n: int, d: int, cap: int) -> Tuple[LagrangianSubspace, ...]:
    check_dimension(n, d)
    size = d ** (2 * n)
    if size > cap:
        raise CapExceededError(
            f"phase space of {size} points exceeds the cap of {cap}",
            cap=cap, size=size, what="phase points")
    points = [a for a in all_points(n, d) if not is_zero(a)]
    level = {()}
    for _ in range(n):
        grown = set()
        for basis in level:
            for a in points:
                if any(symplectic_product(a, b, d) for b in basis):
                    continue
                new = rref(basis + (a,), d)
                if len(new) == len(basis) + 1:
                    grown.add(new)
        level = grown
        logger.debug("isotropic subspaces of dimension %d: %d", len(next(iter(level), ())), len(level))
    return tuple(LagrangianSubspace(n, d, b) for b in sorted(level))
