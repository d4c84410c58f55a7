"""Default caps and environment overrides.

Every exponential computation in ctxkit is guarded by a cap. Defaults live
here as module constants; ``Limits`` bundles them for a single run and can
be overridden from the environment (``CTXKIT_CAP_HV``, ``CTXKIT_THREADS``)
and then from CLI flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .exceptions import DomainError


DEFAULT_VERTEX_CAP = 2000
DEFAULT_HIDDEN_VARIABLE_CAP = 2 ** 20
DEFAULT_PROTOCOL_CAP = 10 ** 6
DEFAULT_PHASE_SPACE_CAP = 4096

# Graphs up to this many vertices get the lexicographically smallest
# optimal witness; larger graphs keep the first optimum found.
CANONICAL_WITNESS_LIMIT = 64

# Exhaustive witness verification is only attempted below this many
# canonical hidden variables.
WITNESS_CHECK_LIMIT = 2 ** 16

ENV_CAP_HV = "CTXKIT_CAP_HV"
ENV_THREADS = "CTXKIT_THREADS"


def available_threads() -> int:
    return os.cpu_count() or 1


def _positive_int(name: str, raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Limits:
    """Caps and parallelism for one analysis run."""
    vertices: int = DEFAULT_VERTEX_CAP
    hidden_variables: int = DEFAULT_HIDDEN_VARIABLE_CAP
    protocols: int = DEFAULT_PROTOCOL_CAP
    phase_space: int = DEFAULT_PHASE_SPACE_CAP
    threads: int = 1

    def __post_init__(self):
        for field_name in ("vertices", "hidden_variables", "protocols",
                           "phase_space", "threads"):
            value = getattr(self, field_name)
            if not isinstance(value, int) or value <= 0:
                raise DomainError(f"{field_name} cap must be a positive integer, got {value!r}")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Limits":
        env = os.environ if environ is None else environ
        limits = cls(threads=available_threads())
        if env.get(ENV_CAP_HV):
            limits = replace(limits, hidden_variables=_positive_int(ENV_CAP_HV, env[ENV_CAP_HV]))
        if env.get(ENV_THREADS):
            limits = replace(limits, threads=_positive_int(ENV_THREADS, env[ENV_THREADS]))
        return limits

    def override(self, **changes: Optional[int]) -> "Limits":
        """Return a copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
