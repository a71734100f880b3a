"""Experiment configuration and result record schemas."""

import math
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.annealers import Method
from app.config import settings
from app.generators import ProblemFamily, registry

# Repetitions per spin count used for every single-instance figure
DEFAULT_REPETITIONS: dict[int, int] = {4: 10_000, 8: 1_000, 12: 1_000, 16: 100}

# K/N grid bracketing both reported crossovers
DEFAULT_RATIO_GRID: tuple[float, ...] = (1.0, 0.5, 0.25, 0.1, 0.05, 0.02, 0.01)


class BenchMethod(str, Enum):
    """Solver compared by the benchmark."""

    SA = "SA"
    SAM = "SAM"
    SAQ = "SAQ"
    BF = "BF"  # analytic brute force over K distinct states

    @property
    def annealer(self) -> Method | None:
        """Annealing kernel, or None for brute force."""
        return None if self is BenchMethod.BF else Method(self.value)

    @property
    def code(self) -> int:
        """Stable integer used in random stream derivation."""
        return 0 if self is BenchMethod.BF else Method(self.value).code


class FamilySpec(BaseModel):
    """Problem family plus its parameters."""

    name: ProblemFamily
    epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)

    def params(self) -> dict[str, Any]:
        """Keyword parameters passed to the generator."""
        if self.name is ProblemFamily.FALSE_MINIMUM:
            return {"epsilon": self.epsilon}
        return {}


class CellKey(BaseModel):
    """One (realization, method, K) cell of an experiment."""

    model_config = ConfigDict(frozen=True)

    family: ProblemFamily
    n: int
    realization: int
    method: BenchMethod
    ratio: float
    steps: int

    @property
    def cell_id(self) -> str:
        """Stable identifier used to resume interrupted runs."""
        return (
            f"{self.family.value}/n{self.n}/r{self.realization}"
            f"/{self.method.value}/ratio{self.ratio:g}/K{self.steps}"
        )


def steps_for(n: int, ratio: float) -> int:
    """K = round(ratio * 2**n), rounding halves up, never below 1."""
    return max(1, math.floor(ratio * (1 << n) + 0.5))


class ExperimentConfig(BaseModel):
    """Full description of a benchmark experiment."""

    name: str = "experiment"
    family: FamilySpec
    n_values: list[int] = Field(default_factory=lambda: [4, 8, 12, 16], min_length=1)
    methods: list[BenchMethod] = Field(
        default_factory=lambda: [BenchMethod.SA, BenchMethod.SAM], min_length=1
    )
    realizations: int = Field(default=1, ge=1)
    repetitions: dict[int, int] = Field(default_factory=lambda: dict(DEFAULT_REPETITIONS))
    ratios: list[float] = Field(default_factory=lambda: [1.0], min_length=1)
    master_seed: int = Field(default_factory=lambda: settings.master_seed, ge=0, lt=2**64)
    output_dir: Path = Field(default_factory=lambda: settings.output_dir)
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)

    @field_validator("ratios")
    @classmethod
    def _ratios_in_range(cls, value: list[float]) -> list[float]:
        for ratio in value:
            if not 0.0 < ratio <= 1.0:
                raise ValueError(f"ratios must lie in (0, 1], got {ratio}")
        return value

    @field_validator("methods")
    @classmethod
    def _unique_methods(cls, value: list[BenchMethod]) -> list[BenchMethod]:
        if len(set(value)) != len(value):
            raise ValueError("methods must not repeat")
        return value

    @field_validator("repetitions")
    @classmethod
    def _positive_repetitions(cls, value: dict[int, int]) -> dict[int, int]:
        if any(r < 1 for r in value.values()):
            raise ValueError("repetition counts must be positive")
        return value

    @model_validator(mode="after")
    def _sizes_fit_family(self) -> "ExperimentConfig":
        generator = registry.get(self.family.name)
        for n in self.n_values:
            generator.validate_n(n)
        return self

    @property
    def realization_count(self) -> int:
        """Realizations actually drawn; deterministic families have exactly one."""
        return 1 if registry.get(self.family.name).deterministic else self.realizations

    def repetitions_for(self, n: int) -> int:
        """Repetitions R for spin count ``n``."""
        return self.repetitions.get(n, settings.default_repetitions)

    def cells(self) -> list[CellKey]:
        """Every cell in execution order: n, realization, method, ratio."""
        return [
            CellKey(
                family=self.family.name,
                n=n,
                realization=realization,
                method=method,
                ratio=ratio,
                steps=steps_for(n, ratio),
            )
            for n in self.n_values
            for realization in range(self.realization_count)
            for method in self.methods
            for ratio in self.ratios
        ]


class ResultRecord(BaseModel):
    """Aggregated outcome of one cell.

    Infinite TTS values serialize as the strings ``"Infinity"`` and
    ``"-Infinity"`` so every results line is strict JSON.
    """

    model_config = ConfigDict(ser_json_inf_nan="strings")

    cell_id: str
    family: str
    n: int
    method: BenchMethod
    realization_index: int
    ratio: float
    K: int
    R: int | None = Field(default=None, description="None for analytic brute force")
    successes: int | None = None
    best_successes: int | None = None
    g: int = Field(..., ge=1, description="Ground-state degeneracy")
    p_s: float
    ci_low: float
    ci_high: float
    tts: float
    tts_ci_low: float
    tts_ci_high: float
    wall_clock_seconds: float = 0.0

    @field_validator("tts", "tts_ci_low", "tts_ci_high", mode="before")
    @classmethod
    def _parse_infinity(cls, value: Any) -> Any:
        return float(value) if isinstance(value, str) else value

    def to_json_line(self) -> str:
        """Serialize for the results file, without the wall-clock column."""
        return self.model_dump_json(exclude={"wall_clock_seconds"})

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ResultRecord":
        """Create from a results-file dictionary."""
        return cls.model_validate(data)
