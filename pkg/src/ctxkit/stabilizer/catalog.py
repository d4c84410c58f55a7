"""Named models and states.

    bell_table   Bell-state correlations on the CHSH scenario
    pr_box       Popescu-Rohrlich box
    hardy        a rational model with the Hardy support
    ghz          3-qubit GHZ state under local X/Y measurements
    cs_state     two-qutrit state with amplitudes w^(j k^2) / 3
    file:PATH    amplitude file (see ctxkit.stabilizer.amplitudes)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Union

from ..exceptions import DomainError
from ..scenario import EmpiricalModel, ObservableEvent, bell_scenario
from .amplitudes import read_amplitudes
from .cyclotomic import CyclotomicNumber, field_order
from .models import product_measurement_model
from .operators import StateVector

CatalogEntry = Union[EmpiricalModel, StateVector]

_F = Fraction

# Rows follow the Bell scenario contexts A0B0, A0B1, A1B0, A1B1; entries
# are the outcome pairs 00, 01, 10, 11.
BELL_TABLE = (
    (_F(1, 2), _F(0), _F(0), _F(1, 2)),
    (_F(3, 8), _F(1, 8), _F(1, 8), _F(3, 8)),
    (_F(3, 8), _F(1, 8), _F(1, 8), _F(3, 8)),
    (_F(1, 8), _F(3, 8), _F(3, 8), _F(1, 8)),
)

PR_BOX = (
    (_F(1, 2), _F(0), _F(0), _F(1, 2)),
    (_F(1, 2), _F(0), _F(0), _F(1, 2)),
    (_F(1, 2), _F(0), _F(0), _F(1, 2)),
    (_F(0), _F(1, 2), _F(1, 2), _F(0)),
)

# A0B0 = 00 is possible, yet A0=0 forces B1=1, B0=0 forces A1=1, and
# A1B1 = 11 is impossible.
HARDY = (
    (_F(1, 10), _F(1, 10), _F(1, 10), _F(7, 10)),
    (_F(0), _F(1, 5), _F(3, 5), _F(1, 5)),
    (_F(0), _F(3, 5), _F(1, 5), _F(1, 5)),
    (_F(1, 5), _F(2, 5), _F(2, 5), _F(0)),
)


def bell_table() -> EmpiricalModel:
    return EmpiricalModel(bell_scenario(), BELL_TABLE)


def pr_box() -> EmpiricalModel:
    return EmpiricalModel(bell_scenario(), PR_BOX)


def hardy() -> EmpiricalModel:
    return EmpiricalModel(bell_scenario(), HARDY)


def ghz_state() -> StateVector:
    """(|000> + |111>), unnormalized."""
    one, zero = CyclotomicNumber.rational(4, 1), CyclotomicNumber.zero(4)
    return StateVector(2, 3, tuple(one if i in (0, 7) else zero for i in range(8)))


def ghz() -> EmpiricalModel:
    return product_measurement_model(ghz_state(), [("X", "Y")] * 3)


def cs_state() -> StateVector:
    """sum_{j,k} w^(j k^2) |j>|k> / 3 with w = e^(2 pi i / 3)."""
    order = field_order(3)
    return StateVector(3, 2, tuple(
        CyclotomicNumber.root(order, j * k * k) / 3
        for j in range(3) for k in range(3)))


def product_stabilizer_state(n: int, d: int) -> StateVector:
    """|0...0>, a stabilizer state of every scenario (n, d)."""
    return StateVector.basis_state(d, n, 0)


def chsh_weights() -> Dict[ObservableEvent, Fraction]:
    """Unit weight on the events the CHSH game rewards.

    Equal outcomes win on A0B0, A0B1 and A1B0; different outcomes win on A1B1.
    """
    weights = {}
    for context in range(4):
        for a in range(2):
            for b in range(2):
                if (a != b) == (context == 3):
                    weights[ObservableEvent(context, (a, b))] = Fraction(1)
    return weights


_CATALOG: Dict[str, Callable[[], CatalogEntry]] = {
    "bell_table": bell_table,
    "pr_box": pr_box,
    "hardy": hardy,
    "ghz": ghz,
    "cs_state": cs_state,
}

CATALOG_NAMES = tuple(_CATALOG) + ("file:PATH",)


def catalog_state(name: str) -> CatalogEntry:
    """Look up a named model or state.

    Args:
        name: A catalog name, or ``file:PATH`` for an amplitude file.

    Returns:
        An EmpiricalModel for the table entries and ghz; a StateVector for
        cs_state and amplitude files.

    Raises:
        DomainError: unknown name.
        ParseError: unreadable or malformed amplitude file.
    """
    if name.startswith("file:"):
        return read_amplitudes(name[len("file:"):])
    try:
        factory = _CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    return factory()
