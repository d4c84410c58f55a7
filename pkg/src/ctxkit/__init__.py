"""ctxkit - locate empirical models in the contextuality hierarchy via exclusivity graphs."""

from .exceptions import (
    CtxkitError,
    DomainError,
    ScenarioError,
    NormalizationError,
    SignallingError,
    ParseError,
    CapExceededError,
    NotComputedError,
)
from .config import Limits
from .scenario import (
    MeasurementScenario,
    ObservableEvent,
    FormalEvent,
    EmpiricalModel,
    CanonicalHiddenVariable,
    bell_scenario,
    coarse_grain,
    marginalize,
    is_nonsignalling,
)
from .exclusivity import ExclusivityGraph, exclusivity_graph, support_graph
from .graphs import (
    Graph,
    independence_number,
    independence_degree,
    minimal_independence_number,
    fractional_packing_number,
)
from .logic import (
    ClassifyOptions,
    ClassificationReport,
    LogicalBellInequality,
    classify,
    evaluate_csw,
    logical_bell_inequality,
    noncontextual_fraction,
    joint_distribution,
)
from .protocols import MeasurementProtocol, enumerate_protocols, induced_scenario, verify_theorem4

__version__ = '0.1.0'

__all__ = [
    'CtxkitError',
    'DomainError',
    'ScenarioError',
    'NormalizationError',
    'SignallingError',
    'ParseError',
    'CapExceededError',
    'NotComputedError',
    'Limits',
    'MeasurementScenario',
    'ObservableEvent',
    'FormalEvent',
    'EmpiricalModel',
    'CanonicalHiddenVariable',
    'bell_scenario',
    'coarse_grain',
    'marginalize',
    'is_nonsignalling',
    'ExclusivityGraph',
    'exclusivity_graph',
    'support_graph',
    'Graph',
    'independence_number',
    'independence_degree',
    'minimal_independence_number',
    'fractional_packing_number',
    'ClassifyOptions',
    'ClassificationReport',
    'LogicalBellInequality',
    'classify',
    'evaluate_csw',
    'logical_bell_inequality',
    'noncontextual_fraction',
    'joint_distribution',
    'MeasurementProtocol',
    'enumerate_protocols',
    'induced_scenario',
    'verify_theorem4',
]
