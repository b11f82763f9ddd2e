"""Tests for JSON rendering and the text tables."""

import io
import json
import math

import numpy as np
import pytest
from rich.console import Console

from renyi_lab.core import Order, make_distribution
from renyi_lab.hyptest import RuleKind
from renyi_lab.reports import (
    flatten,
    format_float,
    format_value,
    normalize,
    records_table,
    render_json,
    render_table,
    verify_table,
)
from renyi_lab.verify import PropertyResult


def rendered(table) -> str:
    console = Console(file=io.StringIO(), width=200)
    console.print(table)
    return console.file.getvalue()


class TestFormatFloat:
    """Test float formatting in JSON output."""

    @pytest.mark.parametrize(
        "value, text",
        [(1.0, "1.0"), (0.5, "0.5"), (0.1, "0.10000000000000001"), (1e20, "1e+20"), (-3.0, "-3.0")],
    )
    def test_finite(self, value, text):
        assert format_float(value) == text

    def test_round_trip_precision(self):
        value = 1 / 3
        assert float(format_float(value)) == value

    def test_non_finite(self):
        assert format_float(math.inf) == '"inf"'
        assert format_float(-math.inf) == '"-inf"'
        assert format_float(math.nan) == '"nan"'


class TestNormalize:
    """Test conversion of result documents to plain values."""

    def test_numpy_scalars(self):
        doc = normalize({"a": np.float64(0.25), "b": np.int64(3), "c": np.bool_(True)})
        assert doc == {"a": 0.25, "b": 3, "c": True}
        assert type(doc["b"]) is int

    def test_domain_objects(self):
        doc = normalize({"p": make_distribution([1, 3]), "rule": RuleKind.UNION, "pair": (1, 2)})
        assert doc == {"p": [0.25, 0.75], "rule": "union", "pair": [1, 2]}

    def test_integer_keys_become_strings(self):
        assert normalize({0: 1.5}) == {"0": 1.5}

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            normalize({"order": Order.one()})


class TestRenderJson:
    """Test the deterministic JSON writer."""

    def test_layout(self):
        text = render_json({"alpha": 2.0, "probs": [0.5, 0.5], "nested": {"ok": True, "none": None}})
        assert text == (
            "{\n"
            '  "alpha": 2.0,\n'
            '  "probs": [0.5, 0.5],\n'
            '  "nested": {\n'
            '    "ok": true,\n'
            '    "none": null\n'
            "  }\n"
            "}"
        )

    def test_parses_back(self):
        doc = {"value": math.inf, "rows": [{"p1": 0, "value": 0.125}], "empty": [], "blank": {}}
        parsed = json.loads(render_json(doc))
        assert parsed == {"value": "inf", "rows": [{"p1": 0, "value": 0.125}], "empty": [], "blank": {}}

    def test_deterministic(self):
        doc = {"b": [1, 2, 3], "a": 1 / 7}
        assert render_json(doc) == render_json(dict(doc))
        assert render_json(doc).index('"b"') < render_json(doc).index('"a"')


class TestTextTables:
    """Test the rich tables."""

    def test_format_value(self):
        assert format_value(True) == "yes"
        assert format_value(None) == "-"
        assert format_value(1 / 3) == "0.3333333333"
        assert format_value([1, 0.5]) == "[1, 0.5]"
        assert format_value(math.inf) == "inf"

    def test_flatten(self):
        flat = flatten({"a": {"b": 1}, "rows": [{"x": 2}, {"x": 3}], "list": [1, 2]})
        assert flat == {"a.b": 1, "rows[0].x": 2, "rows[1].x": 3, "list": [1, 2]}

    def test_render_table(self):
        table = render_table("Renyi measures", {"alpha": 2.0, "H_alpha": 1.5})
        assert table.row_count == 2
        assert [c.header for c in table.columns] == ["Metric", "Value"]
        assert "H_alpha" in rendered(table)

    def test_records_table(self):
        records = [{"counts": [1, 0], "probability": 0.5}, {"counts": [0, 1], "probability": 0.5}]
        table = records_table("Types", records)
        assert [c.header for c in table.columns] == ["counts", "probability"]
        assert table.row_count == 2

    def test_verify_table(self):
        results = [
            PropertyResult("renyi_entropy.order_zero", "renyi_entropy", True, 10, -1.0, "ok", "Hartley limit"),
            PropertyResult("shannon.capacity_certificate", "shannon", False, 3, 0.5, "bad"),
        ]
        text = rendered(verify_table(results))
        assert "pass" in text
        assert "FAIL" in text
        assert "Hartley limit" in text
