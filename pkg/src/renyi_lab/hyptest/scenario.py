"""Two-sensor testing scenarios and their JSON schema."""

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import InvalidInput
from ..core.io import DistributionModel, parse_model, read_json_file
from ..core.types import Distribution, check_same_alphabet


@dataclass(frozen=True)
class Scenario:
    """Families P1, P2, Q over one alphabet, sampling ratio lambda and block length n1.

    Sensor 2 contributes n2 = round(lambda * n1) samples (halves round up); the
    realized ratio n2 / n1 is what the exponent formulas use.
    """

    family_p1: Tuple[Distribution, ...]
    family_p2: Tuple[Distribution, ...]
    family_q: Tuple[Distribution, ...]
    lam: float
    n1: int

    def __post_init__(self):
        for name in ("family_p1", "family_p2", "family_q"):
            family = tuple(getattr(self, name))
            if not family:
                raise InvalidInput(f"{name} must contain at least one distribution", "hyptest")
            object.__setattr__(self, name, family)
        check_same_alphabet(*self.family_p1, *self.family_p2, *self.family_q, module="hyptest")
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise InvalidInput(f"lambda must be a finite number >= 0, got {self.lam}", "hyptest")
        if int(self.n1) != self.n1 or self.n1 < 1:
            raise InvalidInput(f"n1 must be a positive integer, got {self.n1}", "hyptest")
        object.__setattr__(self, "n1", int(self.n1))
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def n2(self) -> int:
        return int(math.floor(self.lam * self.n1 + 0.5))

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def realized_lambda(self) -> float:
        return self.n2 / self.n1

    @property
    def alphabet_size(self) -> int:
        return self.family_p1[0].alphabet_size

    def stack(self, name: str) -> np.ndarray:
        """Family as a (members, alphabet_size) array."""
        return np.vstack([d.probs for d in getattr(self, name)])

    def with_n1(self, n1: int) -> "Scenario":
        return replace(self, n1=n1)


class ScenarioModel(BaseModel):
    """Schema for ``{"p1": [..], "p2": [..], "q": [..], "lambda": 1.0, "n1": 16}``."""

    model_config = ConfigDict(populate_by_name=True)

    p1: List[DistributionModel] = Field(..., min_length=1)
    p2: List[DistributionModel] = Field(..., min_length=1)
    q: List[DistributionModel] = Field(..., min_length=1)
    lam: float = Field(..., alias="lambda", ge=0, description="Sensor 2 samples per Sensor 1 sample")
    n1: int = Field(..., ge=1, description="Sensor 1 block length")

    def to_scenario(self) -> Scenario:
        return Scenario(
            tuple(d.to_distribution() for d in self.p1),
            tuple(d.to_distribution() for d in self.p2),
            tuple(d.to_distribution() for d in self.q),
            self.lam,
            self.n1,
        )


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Load and validate a scenario file."""
    return parse_model(ScenarioModel, read_json_file(path), str(path)).to_scenario()
