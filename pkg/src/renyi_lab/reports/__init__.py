"""JSON and text rendering of command results."""

from .generator import (
    flatten,
    format_float,
    format_value,
    normalize,
    records_table,
    render_json,
    render_table,
    verify_table,
)

__all__ = [
    "flatten",
    "format_float",
    "format_value",
    "normalize",
    "records_table",
    "render_json",
    "render_table",
    "verify_table",
]
