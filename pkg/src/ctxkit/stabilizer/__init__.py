"""Exact stabilizer quantum mechanics on n qudits of prime dimension d."""

from .cyclotomic import CyclotomicNumber, field_order
from .phase_space import (
    LagrangianSubspace,
    PhasePoint,
    enumerate_lagrangians,
    symplectic_product,
)
from .operators import (
    StateVector,
    pauli_label,
    stabilizer_projector,
    weyl_matrix,
)
from .models import (
    MixedState,
    StabilizerScenario,
    maximally_mixed,
    numeric_orthogonality_agrees,
    product_measurement_model,
    projector_overlap_spectrum,
    quantum_empirical_model,
    stabilizer_scenario,
)
from .amplitudes import format_amplitudes, parse_amplitudes, read_amplitudes
from .mermin import MerminProof, mermin_square_check
from .catalog import CATALOG_NAMES, catalog_state, chsh_weights, cs_state, product_stabilizer_state

__all__ = [
    'CyclotomicNumber',
    'field_order',
    'LagrangianSubspace',
    'PhasePoint',
    'enumerate_lagrangians',
    'symplectic_product',
    'StateVector',
    'pauli_label',
    'stabilizer_projector',
    'weyl_matrix',
    'MixedState',
    'StabilizerScenario',
    'maximally_mixed',
    'numeric_orthogonality_agrees',
    'product_measurement_model',
    'projector_overlap_spectrum',
    'quantum_empirical_model',
    'stabilizer_scenario',
    'format_amplitudes',
    'parse_amplitudes',
    'read_amplitudes',
    'MerminProof',
    'mermin_square_check',
    'CATALOG_NAMES',
    'catalog_state',
    'chsh_weights',
    'cs_state',
    'product_stabilizer_state',
]
