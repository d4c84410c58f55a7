"""Output formatting for the CLI: JSON documents and ``key value`` text."""

import json
from typing import Any, Dict, List, Optional


def to_json(obj: Any) -> str:
    """Stable, indented JSON with a trailing newline.

    Examples:
        >>> to_json({"a": 1})
        '{\\n  "a": 1\\n}\\n'
    """
    return json.dumps(obj, indent=2, default=str) + "\n"


def _render(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"), default=str)
    return str(value)


def _describe_event(value: Any) -> Optional[str]:
    """``A0=0 B0=0`` for an event dict from ctxkit.formats.event_to_json."""
    if isinstance(value, dict) and set(value) == {"context", "measurements", "outcomes"}:
        outcomes = value["outcomes"]
        parts = outcomes.split(",") if "," in outcomes else list(outcomes)
        return " ".join(f"{m}={o}" for m, o in zip(value["measurements"], parts))
    return None


def flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Flatten nested dicts into dotted keys; lists and events stay whole.

    Examples:
        >>> flatten({"a": 1, "b": {"c": True}})
        {'a': 1, 'b.c': True}
    """
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict) and _describe_event(value) is None:
            flat.update(flatten(value, name + "."))
        else:
            flat[name] = value
    return flat


def format_key_value_pairs(data: Dict[str, Any]) -> str:
    """One ``key value`` line per field.

    Events print as ``A0=0 B0=0``; lists of events join with ``; ``.

    Examples:
        >>> format_key_value_pairs({'strongly_contextual': True, 'noncontextual_fraction': '0'})
        'strongly_contextual true\\nnoncontextual_fraction 0'
    """
    lines: List[str] = []
    for key, value in flatten(data).items():
        event = _describe_event(value)
        if event is not None:
            text = event
        elif isinstance(value, list) and value and all(_describe_event(v) for v in value):
            text = "; ".join(_describe_event(v) for v in value)
        else:
            text = _render(value)
        lines.append(f"{key} {text}")
    return "\n".join(lines)
