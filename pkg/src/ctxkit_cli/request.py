"""Analysis requests: what to load and which checks to run.

Exactly one input source per request:

    --catalog NAME           a named model or state (see ctxkit.stabilizer.catalog)
    --model FILE             scenario + model JSON
    --stabilizer n=N d=D     stabilizer scenario; the state comes from --state
    --dimacs FILE            a bare graph; only graph invariants are computed

--state accepts zero, maximally_mixed, cs, or an amplitude file path, and
only makes sense with --stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from ctxkit.config import Limits


class RequestError(ValueError):
    """Bad combination or syntax of command-line inputs."""
    pass


class InputKind(Enum):
    CATALOG = "catalog"
    MODEL = "model"
    STABILIZER = "stabilizer"
    DIMACS = "dimacs"


NAMED_STATES = ("zero", "maximally_mixed", "cs")


@dataclass(frozen=True)
class AnalysisRequest:
    kind: InputKind
    source: str
    limits: Limits
    n: Optional[int] = None
    d: Optional[int] = None
    state: Optional[str] = None
    csw: Optional[str] = None
    full_scan: bool = False
    lp: bool = True
    protocols: bool = False
    out: Optional[str] = None

    def describe(self) -> str:
        if self.kind is InputKind.STABILIZER:
            return f"stabilizer n={self.n} d={self.d} state={self.state}"
        return f"{self.kind.value} {self.source}"


def parse_stabilizer_spec(tokens: Sequence[str]) -> Tuple[int, int]:
    """Parse ``n=N d=D`` (either order) into (n, d).

    Examples:
        >>> parse_stabilizer_spec(["n=2", "d=3"])
        (2, 3)
    """
    values = {}
    for token in tokens:
        key, sep, raw = token.partition("=")
        if not sep or key not in ("n", "d") or key in values:
            raise RequestError(f"expected n=N d=D, got {' '.join(tokens)!r}")
        try:
            values[key] = int(raw)
        except ValueError:
            raise RequestError(f"{key} must be an integer, got {raw!r}")
    if set(values) != {"n", "d"}:
        raise RequestError(f"expected n=N d=D, got {' '.join(tokens)!r}")
    if values["n"] < 1:
        raise RequestError(f"n must be positive, got {values['n']}")
    return values["n"], values["d"]


def build_request(*, catalog: Optional[str] = None, model: Optional[str] = None,
                  stabilizer: Optional[Sequence[str]] = None, dimacs: Optional[str] = None,
                  state: Optional[str] = None, csw: Optional[str] = None,
                  limits: Limits, full_scan: bool = False, lp: bool = True,
                  protocols: bool = False, out: Optional[str] = None) -> AnalysisRequest:
    sources = [(InputKind.CATALOG, catalog), (InputKind.MODEL, model),
               (InputKind.STABILIZER, stabilizer), (InputKind.DIMACS, dimacs)]
    given = [(kind, value) for kind, value in sources if value is not None]
    if len(given) != 1:
        raise RequestError("give exactly one of --catalog, --model, --stabilizer, --dimacs")
    kind, value = given[0]

    if state is not None and kind is not InputKind.STABILIZER:
        raise RequestError("--state only applies to --stabilizer")
    if kind is InputKind.DIMACS and (csw is not None or protocols):
        raise RequestError("--csw and --protocols need a scenario, not a bare graph")

    n = d = None
    if kind is InputKind.STABILIZER:
        n, d = parse_stabilizer_spec(value)
        value = " ".join(value)
        state = state or "maximally_mixed"

    return AnalysisRequest(
        kind=kind, source=value, limits=limits, n=n, d=d, state=state, csw=csw,
        full_scan=full_scan, lp=lp, protocols=protocols, out=out)
