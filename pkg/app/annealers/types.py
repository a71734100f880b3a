"""Annealer type definitions."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Method(str, Enum):
    """Annealing kernel."""

    SA = "SA"  # single flip, Boltzmann acceptance
    SAM = "SAM"  # multi flip, Boltzmann acceptance
    SAQ = "SAQ"  # multi flip, tunneling acceptance

    @property
    def code(self) -> int:
        """Stable integer used in random stream derivation."""
        return _METHOD_CODES[self]

    @property
    def multi_flip(self) -> bool:
        """True when the kernel proposes 1..n flips per step."""
        return self is not Method.SA


_METHOD_CODES = {Method.SA: 1, Method.SAM: 2, Method.SAQ: 3}


class AnnealParams(BaseModel):
    """Everything that defines one annealing run."""

    model_config = ConfigDict(frozen=True)

    method: Method
    steps: int = Field(..., ge=1, description="Step budget K")
    t0_override: float | None = Field(default=None, ge=0.0)
    seed: int | None = Field(default=None, ge=0, description="Seed for a standalone stream")


class Schedule(BaseModel):
    """Fast schedule T(k) = T0 / k for k = 1..K."""

    model_config = ConfigDict(frozen=True)

    t0: float = Field(..., ge=0.0)
    steps: int = Field(..., ge=1)

    def temperature(self, k: int) -> float:
        """Temperature at step ``k`` (1-based)."""
        return self.t0 / k

    @property
    def final_temperature(self) -> float:
        """Temperature at the last step."""
        return self.t0 / self.steps


class RunOutcome(BaseModel):
    """Result of one anneal."""

    model_config = ConfigDict(frozen=True)

    final_state: tuple[int, ...]
    final_energy: float
    best_state: tuple[int, ...]
    best_energy: float
    accepted_moves: int = Field(..., ge=0)
    steps: int = Field(..., ge=1)
    success: bool | None = None
    best_success: bool | None = None

    @model_validator(mode="after")
    def _best_not_above_final(self) -> "RunOutcome":
        if self.best_energy > self.final_energy:
            raise ValueError("best_energy must not exceed final_energy")
        return self


class TraceStep(BaseModel):
    """One step of a debug trace."""

    k: int
    temperature: float
    flips: list[int]
    delta_e: float
    accepted: bool
