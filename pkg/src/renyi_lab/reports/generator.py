"""Deterministic JSON documents and rich text tables for command output."""

import json
import math
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Sequence

import numpy as np
from rich.table import Table

# Digits used for floats in JSON output
FLOAT_DIGITS = 17
# Digits used for floats in text tables
TEXT_DIGITS = 10


def normalize(value: Any) -> Any:
    """Convert a result document into plain dicts, lists, str, int, float, bool and None.

    Objects with ``to_dict`` or ``tolist`` are converted through them, numpy
    scalars become Python scalars and enums become their values.
    """
    if isinstance(value, Enum):
        return normalize(value.value)
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, np.bool_):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if hasattr(value, "to_dict"):
        return normalize(value.to_dict())
    if isinstance(value, np.ndarray) or hasattr(value, "tolist"):
        return normalize(value.tolist())
    if isinstance(value, Mapping):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def format_float(value: float) -> str:
    """17 significant digits, always recognisable as a float; non-finite values as strings."""
    if math.isnan(value):
        return '"nan"'
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    text = format(value, f".{FLOAT_DIGITS}g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _emit(value: Any, indent: int, out: List[str]) -> None:
    pad = "  " * indent
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{pad}  {json.dumps(key)}: ")
            _emit(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(f"{pad}}}")
    else:
        if not value:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list)) for v in value):
            out.append("[")
            for i, item in enumerate(value):
                _emit(item, indent + 1, out)
                if i < len(value) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(f"{pad}  ")
            _emit(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(f"{pad}]")


def render_json(doc: Any) -> str:
    """Serialize a result document with stable key order and float formatting.

    Args:
        doc: Result document; see normalize for the accepted types

    Returns:
        JSON text without a trailing newline
    """
    out: List[str] = []
    _emit(normalize(doc), 0, out)
    return "".join(out)


def format_value(value: Any) -> str:
    """Short human-readable form of a normalized value."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return format(value, f".{TEXT_DIGITS}g")
    if isinstance(value, list):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    if value is None:
        return "-"
    return str(value)


def flatten(doc: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Dotted keys for nested dicts; lists of dicts are indexed as key[i]."""
    flat: Dict[str, Any] = {}
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{name}."))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, item in enumerate(value):
                flat.update(flatten(item, f"{name}[{i}]."))
        else:
            flat[name] = value
    return flat


def render_table(title: str, doc: Mapping[str, Any]) -> Table:
    """Two-column Metric / Value table of a (possibly nested) result document."""
    table = Table(title=title)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="green")
    for key, value in flatten(normalize(doc)).items():
        table.add_row(key, format_value(value))
    return table


def records_table(title: str, records: Sequence[Mapping[str, Any]]) -> Table:
    """One row per record, columns taken from the first record's keys."""
    rows = [normalize(r) for r in records]
    table = Table(title=title)
    columns = list(rows[0]) if rows else []
    for i, column in enumerate(columns):
        table.add_column(column, style="cyan" if i == 0 else None)
    for row in rows:
        table.add_row(*(format_value(row.get(c)) for c in columns))
    return table


def verify_table(results: Iterable[Any]) -> Table:
    """Pass/fail table of property results, grouped by measure."""
    table = Table(title="Property suite")
    table.add_column("Group", style="cyan")
    table.add_column("Property", style="cyan")
    table.add_column("Instances", justify="right")
    table.add_column("Worst excess", justify="right")
    table.add_column("Status")
    table.add_column("Checks", style="dim")
    for result in results:
        status = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(
            result.group,
            result.name,
            str(result.instances),
            format_value(float(result.worst)),
            status,
            result.reference,
        )
    return table
