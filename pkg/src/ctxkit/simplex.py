"""Exact two-phase simplex over Fractions.

Solves

    maximize    c . x
    subject to  A_ub x <= b_ub
                A_eq x == b_eq
                x >= 0

on a dense tableau. Bland's rule picks the entering column (smallest index
with negative reduced cost) and breaks ratio-test ties by smallest basic
variable, so the method terminates on degenerate problems. Phase one
minimizes the sum of artificial variables; artificials left in the basis at
level zero are pivoted out, and rows where that is impossible are dropped
as redundant.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exceptions import DomainError

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Fraction]]


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    x: Optional[Tuple[Fraction, ...]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _Tableau:
    """Rows are lists of Fractions; the last entry of each row is the rhs.

    ``objective`` holds reduced costs r_j with the current value in its last
    slot: z + sum r_j x_j = value.
    """

    def __init__(self, rows: List[List[Fraction]], basis: List[int], width: int):
        self.rows = rows
        self.basis = basis
        self.width = width
        self.objective: List[Fraction] = [Fraction(0)] * (width + 1)
        self.pivots = 0

    def set_objective(self, c: Sequence[Fraction]) -> None:
        obj = [-Fraction(v) for v in c] + [Fraction(0)] * (self.width - len(c))
        obj.append(Fraction(0))
        for r, b in enumerate(self.basis):
            coef = obj[b]
            if coef:
                row = self.rows[r]
                obj = [o - coef * v for o, v in zip(obj, row)]
        self.objective = obj

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        p = row[j]
        if p != 1:
            row = [v / p for v in row]
            self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i != r and other[j]:
                f = other[j]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
        f = self.objective[j]
        if f:
            self.objective = [a - f * b for a, b in zip(self.objective, row)]
        self.basis[r] = j
        self.pivots += 1

    def run(self, allowed: int) -> bool:
        """Iterate to optimality over columns < ``allowed``. False if unbounded."""
        while True:
            entering = next((j for j in range(allowed) if self.objective[j] < 0), None)
            if entering is None:
                return True
            best_r = None
            best_ratio = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and self.basis[r] < self.basis[best_r])):
                        best_r, best_ratio = r, ratio
            if best_r is None:
                return False
            self.pivot(best_r, entering)


def maximize(c: Sequence[Fraction],
             A_ub: Optional[Matrix] = None, b_ub: Optional[Sequence[Fraction]] = None,
             A_eq: Optional[Matrix] = None, b_eq: Optional[Sequence[Fraction]] = None) -> LPResult:
    """Maximize ``c . x`` over the polyhedron; see the module docstring."""
    nvars = len(c)
    A_ub = [list(map(Fraction, row)) for row in (A_ub or [])]
    b_ub = [Fraction(v) for v in (b_ub or [])]
    A_eq = [list(map(Fraction, row)) for row in (A_eq or [])]
    b_eq = [Fraction(v) for v in (b_eq or [])]
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise DomainError("constraint matrix and right-hand side differ in length")
    for row in A_ub + A_eq:
        if len(row) != nvars:
            raise DomainError(f"constraint row has {len(row)} coefficients for {nvars} variables")

    n_slack = len(A_ub)
    # Columns: originals, slacks, then artificials.
    specs = []  # (coefficients over originals, slack column or None, slack sign, rhs)
    for i, (row, b) in enumerate(zip(A_ub, b_ub)):
        sign = 1
        if b < 0:
            row, b, sign = [-v for v in row], -b, -1
        specs.append((row, nvars + i, sign, b))
    for row, b in zip(A_eq, b_eq):
        if b < 0:
            row, b = [-v for v in row], -b
        specs.append((row, None, 0, b))

    needs_artificial = [slack is None or sign < 0 for _, slack, sign, _ in specs]
    n_art = sum(needs_artificial)
    width = nvars + n_slack + n_art

    rows: List[List[Fraction]] = []
    basis: List[int] = []
    art = nvars + n_slack
    for (coeffs, slack, sign, b), artificial in zip(specs, needs_artificial):
        row = list(coeffs) + [Fraction(0)] * (n_slack + n_art) + [b]
        if slack is not None:
            row[slack] = Fraction(sign)
        if artificial:
            row[art] = Fraction(1)
            basis.append(art)
            art += 1
        else:
            basis.append(slack)
        rows.append(row)

    tab = _Tableau(rows, basis, width)
    logger.debug("simplex: %d variables, %d rows, %d artificials", nvars, len(rows), n_art)

    if n_art:
        first_art = nvars + n_slack
        tab.set_objective([Fraction(0)] * first_art + [Fraction(-1)] * n_art)
        tab.run(width)
        if tab.objective[-1] < 0:
            logger.debug("simplex: infeasible after %d pivots", tab.pivots)
            return LPResult(LPStatus.INFEASIBLE)
        # Drive zero-level artificials out of the basis.
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= first_art:
                j = next((j for j in range(first_art) if tab.rows[r][j] != 0), None)
                if j is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, j)
            r += 1
        tab.rows = [row[:first_art] + [row[-1]] for row in tab.rows]
        tab.width = first_art

    tab.set_objective(list(map(Fraction, c)))
    if not tab.run(tab.width):
        logger.debug("simplex: unbounded after %d pivots", tab.pivots)
        return LPResult(LPStatus.UNBOUNDED)

    x = [Fraction(0)] * nvars
    for r, b in enumerate(tab.basis):
        if b < nvars:
            x[b] = tab.rows[r][-1]
    logger.debug("simplex: optimum %s after %d pivots", tab.objective[-1], tab.pivots)
    return LPResult(LPStatus.OPTIMAL, tab.objective[-1], tuple(x))
