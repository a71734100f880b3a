"""Aggregation of repeated anneals into success estimates."""

from collections.abc import Sequence

from pydantic import BaseModel, Field, computed_field, model_validator

from app.annealers import RunOutcome
from app.errors import ContractViolationError
from app.stats.intervals import clopper_pearson
from app.stats.tts import TARGET, time_to_solution


class SuccessEstimate(BaseModel):
    """Success count with its exact confidence interval."""

    successes: int = Field(..., ge=0)
    repetitions: int = Field(..., ge=1)
    ci_low: float
    ci_high: float
    steps: int = Field(..., ge=1, description="Per-run budget K")

    @model_validator(mode="after")
    def _ordered(self) -> "SuccessEstimate":
        if self.successes > self.repetitions:
            raise ValueError("successes cannot exceed repetitions")
        if not 0.0 <= self.ci_low <= self.p_s <= self.ci_high <= 1.0:
            raise ValueError("interval must bracket the point estimate within [0, 1]")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def p_s(self) -> float:
        """Point estimate k / R."""
        return self.successes / self.repetitions


class TtsInterval(BaseModel):
    """Time to solution with bounds from the p_s interval endpoints."""

    tts: float
    tts_ci_low: float
    tts_ci_high: float


def estimate_counts(
    successes: int, repetitions: int, steps: int, alpha: float = 0.05
) -> SuccessEstimate:
    """Build an estimate from raw counts."""
    low, high = clopper_pearson(successes, repetitions, alpha)
    return SuccessEstimate(
        successes=successes,
        repetitions=repetitions,
        ci_low=low,
        ci_high=high,
        steps=steps,
    )


def estimate(outcomes: Sequence[RunOutcome], steps: int, alpha: float = 0.05) -> SuccessEstimate:
    """Count success flags and attach the Clopper-Pearson interval.

    Raises:
        ContractViolationError: If ``outcomes`` is empty or holds unmarked runs.
    """
    if not outcomes:
        raise ContractViolationError("cannot estimate from an empty list of outcomes")
    if any(outcome.success is None for outcome in outcomes):
        raise ContractViolationError("every outcome must be marked against the minima set")
    successes = sum(1 for outcome in outcomes if outcome.success)
    return estimate_counts(successes, len(outcomes), steps, alpha)


def tts_interval(est: SuccessEstimate, t_a: float, target: float = TARGET) -> TtsInterval:
    """Transform the p_s interval into a TTS interval (TTS decreases with p_s)."""
    return TtsInterval(
        tts=time_to_solution(est.p_s, t_a, target).tts,
        tts_ci_low=time_to_solution(est.ci_high, t_a, target, basis="ci_high").tts,
        tts_ci_high=time_to_solution(est.ci_low, t_a, target, basis="ci_low").tts,
    )
