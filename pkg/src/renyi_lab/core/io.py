"""JSON input schemas and file loaders."""

import json
from pathlib import Path
from typing import List, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import InvalidInput
from .types import Channel, Distribution, make_channel, make_distribution

# Row sums outside [1 - ROW_SUM_TOLERANCE, 1 + ROW_SUM_TOLERANCE] are rejected
ROW_SUM_TOLERANCE = 1e-9


def _check_row(values: List[float]) -> List[float]:
    if not values:
        raise ValueError("probability vector must be non-empty")
    if any(v < 0 for v in values):
        raise ValueError("negative entries are not allowed")
    total = sum(values)
    if abs(total - 1.0) > ROW_SUM_TOLERANCE:
        raise ValueError(f"entries sum to {total!r}, outside 1 +/- {ROW_SUM_TOLERANCE}")
    return values


class DistributionModel(BaseModel):
    """Schema for ``{"probs": [...]}``."""

    probs: List[float] = Field(..., description="One probability per alphabet symbol")

    @field_validator("probs")
    @classmethod
    def probs_are_stochastic(cls, value: List[float]) -> List[float]:
        return _check_row(value)

    def to_distribution(self) -> Distribution:
        return make_distribution(self.probs)


class ChannelModel(BaseModel):
    """Schema for ``{"rows": [[...], ...]}``."""

    rows: List[List[float]] = Field(..., description="One output distribution per input symbol")

    @field_validator("rows")
    @classmethod
    def rows_are_stochastic(cls, value: List[List[float]]) -> List[List[float]]:
        if not value:
            raise ValueError("channel needs at least one row")
        widths = {len(row) for row in value}
        if len(widths) != 1:
            raise ValueError("all channel rows must have the same length")
        return [_check_row(row) for row in value]

    def to_channel(self) -> Channel:
        return make_channel(self.rows)


def _read_json(path: Union[str, Path]) -> object:
    path = Path(path)
    if not path.exists():
        raise InvalidInput(f"input file {path} not found", "cli")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}", "cli") from exc


def parse_model(model: type, data: object, source: str = "input"):
    """Validate raw JSON data against a pydantic model, raising InvalidInput."""
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        raise InvalidInput(f"{source}: {where}: {first['msg']}", "core") from exc


def load_distribution(path: Union[str, Path]) -> Distribution:
    """Load a distribution from a JSON file."""
    return parse_model(DistributionModel, _read_json(path), str(path)).to_distribution()


def load_channel(path: Union[str, Path]) -> Channel:
    """Load a channel from a JSON file."""
    return parse_model(ChannelModel, _read_json(path), str(path)).to_channel()


def read_json_file(path: Union[str, Path]) -> object:
    return _read_json(path)
