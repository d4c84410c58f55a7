"""Stabilizer measurement scenarios and their Born-rule empirical models.

For n qudits of prime dimension d the measurements are the canonical phase
points (one per Weyl/Pauli measurement), the contexts are the Lagrangian
subspaces, and every context has d^n quantum-possible events: one rank-one
projector per coset pattern. The remaining formal events of a context get
probability exactly 0.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import DEFAULT_PHASE_SPACE_CAP
from ..exceptions import DomainError
from ..exclusivity import exclusivity_graph
from ..scenario import EmpiricalModel, MeasurementScenario, ObservableEvent, outcome_index
from .cyclotomic import CyclotomicNumber, field_order
from .operators import (
    Matrix,
    StateVector,
    matmul,
    matscale,
    matadd,
    identity,
    measurement_outcome,
    pauli_label,
    phase_point_of_pauli,
    projector_for_pattern,
    weyl_label,
    weyl_matrix,
    eigenphase,
)
from .phase_space import LagrangianSubspace, PhasePoint, enumerate_lagrangians

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuantumEvent:
    """A quantum-possible event: context, outcome tuple, and its projector."""
    context: int
    outcomes: Tuple[int, ...]
    projector: Matrix

    @property
    def event(self) -> ObservableEvent:
        return ObservableEvent(self.context, self.outcomes)


@dataclass(frozen=True)
class StabilizerScenario:
    n: int
    d: int
    scenario: MeasurementScenario
    points: Tuple[PhasePoint, ...]
    lagrangians: Tuple[LagrangianSubspace, ...]

    def quantum_events(self) -> Tuple[QuantumEvent, ...]:
        return _quantum_events(self)


def measurement_name(a: PhasePoint, d: int) -> str:
    return pauli_label(a) if d == 2 else weyl_label(a)


def stabilizer_scenario(n: int, d: int, *, cap: int = DEFAULT_PHASE_SPACE_CAP) -> StabilizerScenario:
    """Canonical Weyl/Pauli measurements with Lagrangian-subspace contexts."""
    return _stabilizer_scenario(n, d, cap)


@lru_cache(maxsize=None)
def _stabilizer_scenario(n: int, d: int, cap: int) -> StabilizerScenario:
    lagrangians = enumerate_lagrangians(n, d, cap=cap)
    points = sorted({a for L in lagrangians for a in L.measurements()})
    index = {a: i for i, a in enumerate(points)}
    contexts = [tuple(index[a] for a in L.measurements()) for L in lagrangians]
    scenario = MeasurementScenario(tuple(measurement_name(a, d) for a in points),
                                   tuple(contexts), d)
    logger.info("stabilizer scenario n=%d d=%d: %d measurements, %d contexts",
                n, d, len(points), len(contexts))
    return StabilizerScenario(n, d, scenario, tuple(points), tuple(lagrangians))


@lru_cache(maxsize=None)
def _quantum_events(ss: StabilizerScenario) -> Tuple[QuantumEvent, ...]:
    out = []
    for i, L in enumerate(ss.lagrangians):
        for pattern in itertools.product(range(ss.d), repeat=ss.n):
            P = projector_for_pattern(L, pattern)
            outcomes = tuple(measurement_outcome(P, ss.points[m], ss.d)
                             for m in ss.scenario.contexts[i])
            out.append(QuantumEvent(i, outcomes, P))
    logger.debug("built %d stabilizer projectors", len(out))
    return tuple(out)


# ------------------------------ states ------------------------------


@dataclass(frozen=True)
class MixedState:
    """A rational convex combination of pure states."""
    components: Tuple[Tuple[Fraction, StateVector], ...]

    def __post_init__(self):
        comps = tuple((Fraction(w), psi) for w, psi in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise DomainError("a mixed state needs at least one component")
        if any(w <= 0 for w, _ in comps):
            raise DomainError("mixture weights must be positive")
        if sum(w for w, _ in comps) != 1:
            raise DomainError("mixture weights must sum to 1")
        shapes = {(psi.d, psi.n) for _, psi in comps}
        if len(shapes) != 1:
            raise DomainError("mixture components act on different systems")

    @property
    def d(self) -> int:
        return self.components[0][1].d

    @property
    def n(self) -> int:
        return self.components[0][1].n

    def probability(self, P: Matrix) -> Fraction:
        return sum((w * psi.probability(P) for w, psi in self.components), Fraction(0))


State = Union[StateVector, MixedState]


def maximally_mixed(n: int, d: int) -> MixedState:
    """Uniform mixture of the computational basis."""
    dim = d ** n
    return MixedState(tuple((Fraction(1, dim), StateVector.basis_state(d, n, i))
                            for i in range(dim)))


def quantum_empirical_model(state: State, n: int, d: int, *,
                            cap: int = DEFAULT_PHASE_SPACE_CAP) -> EmpiricalModel:
    """Born-rule tables of ``state`` on the stabilizer scenario of (n, d)."""
    if (state.n, state.d) != (n, d):
        raise DomainError(f"state lives on n={state.n}, d={state.d}, not n={n}, d={d}")
    ss = stabilizer_scenario(n, d, cap=cap)
    s = ss.scenario
    rows = [[Fraction(0)] * s.event_count(i) for i in range(s.context_count)]
    for qe in ss.quantum_events():
        rows[qe.context][outcome_index(qe.outcomes, d)] = state.probability(qe.projector)
    return EmpiricalModel(s, tuple(tuple(r) for r in rows))


# ---------------------- multipartite Pauli settings -----------------


def product_measurement_model(state: StateVector, settings: Sequence[Sequence[str]],
                              parties: Optional[Sequence[str]] = None) -> EmpiricalModel:
    """Model of local single-qubit Pauli measurements on an n-qubit state.

    ``settings[i]`` lists the Pauli letters party i can measure. Contexts
    are all choices of one setting per party; outcome k means eigenvalue (-1)^k.
    """
    if state.d != 2:
        raise DomainError("product measurement models are defined for qubits")
    k = len(settings)
    if k != state.n:
        raise DomainError(f"{k} parties for a {state.n}-qubit state")
    names = list(parties) if parties is not None else [chr(ord("A") + i) for i in range(k)]
    measurements = [f"{names[i]}_{letter}" for i in range(k) for letter in settings[i]]
    offsets = list(itertools.accumulate([0] + [len(s) for s in settings]))
    contexts = [tuple(offsets[i] + c for i, c in enumerate(choice))
                for choice in itertools.product(*[range(len(s)) for s in settings])]
    scenario = MeasurementScenario(tuple(measurements), tuple(contexts), 2)

    order = field_order(2)
    dim = 2 ** k
    ident = identity(dim, order)
    rows = []
    for i, ctx in enumerate(scenario.contexts):
        local = []
        for party, m in enumerate(ctx):
            letter = settings[party][m - offsets[party]]
            word = "I" * party + letter + "I" * (k - party - 1)
            local.append(weyl_matrix(phase_point_of_pauli(word), 2))
        row = []
        for outcomes in itertools.product(range(2), repeat=k):
            P = None
            for W, o in zip(local, outcomes):
                factor = matscale(matadd(ident, matscale(W, eigenphase(2, o))), Fraction(1, 2))
                P = factor if P is None else matmul(P, factor)
            row.append(state.probability(P))
        rows.append(tuple(row))
    return EmpiricalModel(scenario, tuple(rows))


# --------------------------- cross-checks ---------------------------


@dataclass(frozen=True)
class OrthogonalityCheck:
    ok: bool
    checked_pairs: int
    mismatch: Optional[Tuple[ObservableEvent, ObservableEvent]] = None


def numeric_orthogonality_agrees(n: int, d: int, *, tolerance: float = 1e-9,
                                 cap: int = DEFAULT_PHASE_SPACE_CAP) -> OrthogonalityCheck:
    """Compare exclusivity adjacency with projector orthogonality in floating point."""
    ss = stabilizer_scenario(n, d, cap=cap)
    events = ss.quantum_events()
    xg = exclusivity_graph(ss.scenario)
    ids = [xg.vertex_of(qe.event) for qe in events]
    stack = np.array([[[x.to_complex() for x in row] for row in qe.projector] for qe in events])
    overlaps = np.einsum("aij,bji->ab", stack, stack)
    orthogonal = np.abs(overlaps) < tolerance
    checked = 0
    for a, b in itertools.combinations(range(len(events)), 2):
        checked += 1
        if bool(orthogonal[a, b]) != xg.graph.has_edge(ids[a], ids[b]):
            return OrthogonalityCheck(False, checked, (events[a].event, events[b].event))
    return OrthogonalityCheck(True, checked)


def projector_overlap_spectrum(n: int, d: int, *,
                               cap: int = DEFAULT_PHASE_SPACE_CAP) -> List[Fraction]:
    """Distinct exact values of tr(P1 P2) over pairs of distinct stabilizer projectors."""
    ss = stabilizer_scenario(n, d, cap=cap)
    vectors = []
    for qe in ss.quantum_events():
        P = qe.projector
        c = next(i for i in range(len(P)) if P[i][i])
        # P is rank one, so column c is a multiple of its state; <s|s> = P[c][c].
        column = [P[i][c] for i in range(len(P))]
        vectors.append(([x.conjugate() for x in column], column, P[c][c].to_rational()))
    values = set()
    for (conj1, _, n1), (_, col2, n2) in itertools.combinations(vectors, 2):
        inner = CyclotomicNumber.zero(field_order(d))
        for x, y in zip(conj1, col2):
            if x and y:
                inner = inner + x * y
        values.add(inner.abs2().to_rational() / (n1 * n2))
    return sorted(values)
