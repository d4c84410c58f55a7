"""Cyclotomic amplitude files for user-supplied states.

    # comments allowed
    cyclotomic m=3 dim=9
    0: 1/3
    4: 0,1/3        # index: c0,c1,... means sum_k c_k w_m^k

Indices not listed have amplitude 0.

The backend computes in one field per system: Q(i) for qubits and Q(w_d) for
qudits of odd prime dimension d. Files must use m = 1, 2 or 4 for qubits and
m = d for qudits; states that need other roots of unity (m = 9 or m = 24 for
the qutrit magic states, say) are refused with a ParseError.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from sympy import isprime

from ..exceptions import ParseError
from .cyclotomic import CyclotomicNumber, field_order
from .operators import StateVector


def _coefficient(value: Any, source: Optional[str], line: int) -> Fraction:
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {value!r}", source=source, line=line)


def _system_of(order: int, dim: int, source: Optional[str]) -> Tuple[int, int]:
    if order in (1, 2, 4):
        d = 2
    elif order > 2 and isprime(order):
        d = order
    else:
        raise ParseError(f"unsupported cyclotomic order m={order}", source=source)
    n = 0
    size = 1
    while size < dim:
        size *= d
        n += 1
    if size != dim or n == 0:
        raise ParseError(f"dim={dim} is not a power of {d}", source=source)
    return d, n


def parse_amplitudes(text: str, source: Optional[str] = None) -> StateVector:
    """Parse an amplitude file into a StateVector.

    m = 4 (or 1, 2) selects qubits; an odd prime m selects qudits of
    dimension m. Any other m is refused. dim must be a power of d.
    """
    header = None
    entries: Dict[int, List[Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            tokens = line.split()
            fields = dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
            if tokens[0] != "cyclotomic" or "m" not in fields or "dim" not in fields:
                raise ParseError("expected header 'cyclotomic m=M dim=D'", source=source, line=lineno)
            try:
                header = (int(fields["m"]), int(fields["dim"]))
            except ValueError:
                raise ParseError("m and dim must be integers", source=source, line=lineno)
            continue
        index_text, sep, coeff_text = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'index: c0,c1,...', got {line!r}", source=source, line=lineno)
        try:
            index = int(index_text)
        except ValueError:
            raise ParseError(f"bad index {index_text!r}", source=source, line=lineno)
        coeffs = [_coefficient(c, source, lineno) for c in coeff_text.split(",")]
        if len(coeffs) > header[0]:
            raise ParseError(f"more than m={header[0]} coefficients", source=source, line=lineno)
        if not 0 <= index < header[1]:
            raise ParseError(f"index {index} outside 0..{header[1] - 1}", source=source, line=lineno)
        if index in entries:
            raise ParseError(f"index {index} given twice", source=source, line=lineno)
        entries[index] = coeffs
    if header is None:
        raise ParseError("empty amplitude file", source=source)

    m, dim = header
    d, n = _system_of(m, dim, source)
    target = field_order(d)
    if target % m:
        raise ParseError(f"order m={m} does not embed in the field for d={d}", source=source)
    step = target // m
    amps = []
    for i in range(dim):
        powers = [Fraction(0)] * target
        for k, c in enumerate(entries.get(i, [])):
            powers[(k * step) % target] += c
        amps.append(CyclotomicNumber.from_powers(target, powers))
    if not any(amps):
        raise ParseError("all amplitudes are zero", source=source)
    return StateVector(d, n, tuple(amps))


def format_amplitudes(state: StateVector) -> str:
    m = state.order
    lines = [f"cyclotomic m={m} dim={len(state.amplitudes)}"]
    for i, a in enumerate(state.amplitudes):
        if a:
            # power basis coefficients are also valid w^k coefficients
            lines.append(f"{i}: " + ",".join(str(c) for c in a.coeffs))
    return "\n".join(lines) + "\n"


def read_amplitudes(path: str) -> StateVector:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", source=path)
    return parse_amplitudes(text, source=path)
