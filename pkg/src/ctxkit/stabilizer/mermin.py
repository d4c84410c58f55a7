"""Mermin-square obstruction to noncontextual Pauli valuations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..exceptions import DomainError
from .cyclotomic import field_order
from .operators import identity, matmul, matscale, phase_point_of_pauli, weyl_matrix

# Rows and columns are commuting triples. Row products are +I; the
# columns give +I, +I, -I.
MERMIN_SQUARE = (
    ("ZI", "IZ", "ZZ"),
    ("IX", "XI", "XX"),
    ("ZX", "XZ", "YY"),
)


@dataclass(frozen=True)
class MerminProof:
    n: int
    table: Tuple[Tuple[str, ...], ...]
    rows_commute: bool
    columns_commute: bool
    row_signs: Tuple[int, ...]
    column_signs: Tuple[int, ...]
    candidates_checked: int
    valuation: Optional[Tuple[Tuple[int, ...], ...]]

    @property
    def passed(self) -> bool:
        """No valuation exists and exactly one product is -I."""
        signs = self.row_signs + self.column_signs
        return (self.rows_commute and self.columns_commute and self.valuation is None
                and signs.count(-1) == 1)


def find_valuation(row_signs: Sequence[int], column_signs: Sequence[int]
                   ) -> Tuple[Optional[Tuple[Tuple[int, ...], ...]], int]:
    """Search the 2^9 sign assignments of a 3x3 grid for one matching every product.

    Returns (first consistent grid or None, number of candidates examined).
    """
    checked = 0
    for values in itertools.product((1, -1), repeat=9):
        checked += 1
        grid = [values[3 * r:3 * r + 3] for r in range(3)]
        if all(grid[r][0] * grid[r][1] * grid[r][2] == row_signs[r] for r in range(3)) and \
                all(grid[0][c] * grid[1][c] * grid[2][c] == column_signs[c] for c in range(3)):
            return tuple(tuple(row) for row in grid), checked
    return None, checked


def _triple_sign(words: Sequence[str]) -> int:
    mats = [weyl_matrix(phase_point_of_pauli(w), 2) for w in words]
    product = matmul(matmul(mats[0], mats[1]), mats[2])
    ident = identity(len(product), field_order(2))
    if product == ident:
        return 1
    if product == matscale(ident, -1):
        return -1
    raise DomainError(f"product of {words} is not +-I")


def _commute(words: Sequence[str]) -> bool:
    mats = [weyl_matrix(phase_point_of_pauli(w), 2) for w in words]
    return all(matmul(a, b) == matmul(b, a) for a, b in itertools.combinations(mats, 2))


def mermin_square_check(n: int) -> MerminProof:
    """Verify the square on n qubits (entries tensored with identities)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"the Mermin square needs at least 2 qubits, got {n!r}")
    pad = "I" * (n - 2)
    table = tuple(tuple(w + pad for w in row) for row in MERMIN_SQUARE)
    columns: List[Tuple[str, ...]] = [tuple(table[r][c] for r in range(3)) for c in range(3)]
    row_signs = tuple(_triple_sign(row) for row in table)
    column_signs = tuple(_triple_sign(col) for col in columns)
    valuation, checked = find_valuation(row_signs, column_signs)
    return MerminProof(
        n=n,
        table=table,
        rows_commute=all(_commute(row) for row in table),
        columns_commute=all(_commute(col) for col in columns),
        row_signs=row_signs,
        column_signs=column_signs,
        candidates_checked=checked,
        valuation=valuation,
    )
