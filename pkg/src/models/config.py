"""
Configuration documents for generation, sampling and experiments.

Experiment documents are TOML or JSON mirroring ``ExperimentConfig``;
defaults reproduce the reference Monte Carlo setting (N=4000, q=0.1, B=10).
"""

import json
import tomllib
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from src.models.enums import ExperimentKind, GeneratorModel, InsufficientWeakPolicy
from src.utils.rng import MAX_SEED

DegreeRange = Tuple[float, float]


def _check_range(value: DegreeRange) -> DegreeRange:
    low, high = value
    if low < 0 or high < low:
        raise ValueError(f"invalid degree range {value}")
    return value


class GeneratorParams(BaseModel):
    """Model-specific generator parameters."""

    # Share of the target mean degree supplied by the ring lattice
    ring_fraction: float = Field(default=0.8, gt=0, le=1)
    # Per-node shortcut probability; derived from the target when None
    shortcut_probability: Optional[float] = Field(default=None, ge=0)
    # Edges per arrival (BA, Holme-Kim); drawn from attachment_range when None
    attachment_count: Optional[int] = Field(default=None, ge=1)
    attachment_range: Tuple[int, int] = (2, 8)
    # Triad-formation probability (Holme-Kim); drawn uniformly when None
    triad_probability: Optional[float] = Field(default=None, ge=0, le=1)
    triad_probability_range: Tuple[float, float] = (0.0, 1.0)


class GeneratorConfig(BaseModel):
    model: GeneratorModel = GeneratorModel.MODIFIED_WS
    node_count: int = Field(default=4000, ge=1)
    strong_mean_degree_range: DegreeRange = (10.0, 20.0)
    weak_mean_degree_range: DegreeRange = (100.0, 200.0)
    params: GeneratorParams = Field(default_factory=GeneratorParams)
    # Minimum weak degree; the harness uses the cell's B when unset
    weak_degree_floor: Optional[int] = Field(default=None, ge=0)
    rng_seed: int = Field(default=0, ge=0, lt=MAX_SEED)

    @field_validator("strong_mean_degree_range", "weak_mean_degree_range")
    @classmethod
    def check_ranges(cls, value: DegreeRange) -> DegreeRange:
        return _check_range(value)


class SamplingConfig(BaseModel):
    q: float = Field(default=0.1, gt=0, le=1)
    budget: int = Field(default=10, ge=1, alias="B")
    rng_seed: int = Field(default=0, ge=0, lt=MAX_SEED)
    insufficient_weak_policy: InsufficientWeakPolicy = InsufficientWeakPolicy.ERROR

    model_config = {"populate_by_name": True}


class SweepAxes(BaseModel):
    """Grid of (N, q, B) cells; cells are the Cartesian product in this order."""

    node_counts: List[int] = Field(default_factory=lambda: [4000], min_length=1)
    q_values: List[float] = Field(default_factory=lambda: [0.1], min_length=1)
    budgets: List[int] = Field(default_factory=lambda: [10], min_length=1)

    @field_validator("node_counts")
    @classmethod
    def check_node_counts(cls, values: List[int]) -> List[int]:
        if any(n < 1 for n in values):
            raise ValueError("node counts must be positive")
        return values

    @field_validator("q_values")
    @classmethod
    def check_q(cls, values: List[float]) -> List[float]:
        if any(not 0 < q < 1 for q in values):
            raise ValueError("sweep q values must lie in (0, 1)")
        return values

    @field_validator("budgets")
    @classmethod
    def check_budgets(cls, values: List[int]) -> List[int]:
        if any(b < 1 for b in values):
            raise ValueError("budgets must be >= 1")
        return values

    def cells(self) -> List[Tuple[int, float, int]]:
        return list(product(self.node_counts, self.q_values, self.budgets))


class ExperimentFlags(BaseModel):
    # Use 2Bn0 - 2m1w - m0w as the K_w denominator
    literal_kw_denominator: bool = False
    # Clamp negative open-triad inversions to zero (otherwise keep the sign)
    clamp_negative: bool = True
    second_moment_jackknife: bool = False


class ApproxCheckConfig(BaseModel):
    families: List[GeneratorModel] = Field(
        default_factory=lambda: list(GeneratorModel), min_length=1
    )
    count: int = Field(default=1000, ge=1)
    size: int = Field(default=1000, ge=2)


class ExperimentConfig(BaseModel):
    """A complete experiment document."""

    kind: ExperimentKind = ExperimentKind.MC_SWEEP
    generator: GeneratorConfig = Field(default_factory=GeneratorConfig)
    sweep: SweepAxes = Field(default_factory=SweepAxes)
    trials: int = Field(default=100, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=MAX_SEED)
    output: Optional[Path] = None
    flags: ExperimentFlags = Field(default_factory=ExperimentFlags)
    insufficient_weak_policy: InsufficientWeakPolicy = InsufficientWeakPolicy.ERROR
    approx: ApproxCheckConfig = Field(default_factory=ApproxCheckConfig)

    @model_validator(mode="after")
    def check_two_layer_model(self) -> "ExperimentConfig":
        two_layer = self.generator.model is GeneratorModel.MODIFIED_WS
        if self.kind is not ExperimentKind.APPROX_CHECK and not two_layer:
            raise ValueError("survey experiments need the two-layer modified_ws generator")
        return self

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """Load a ``.toml`` or ``.json`` experiment document."""
        return cls.model_validate(load_document(path))


def load_document(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if path.suffix.lower() == ".toml":
        with path.open("rb") as handle:
            return tomllib.load(handle)
    with path.open("r", encoding="utf-8") as handle:
        return json.load(handle)
