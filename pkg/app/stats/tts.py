"""Time to solution and the multiple-restart analysis."""

import math
from typing import Literal

from pydantic import BaseModel, Field

from app.errors import ContractViolationError

TARGET = 0.99

Basis = Literal["point", "ci_low", "ci_high"]


class TtsResult(BaseModel):
    """Time to reach the target success probability through independent restarts."""

    tts: float = Field(..., description="Annealing steps, may be +inf")
    target: float = TARGET
    basis: Basis = "point"


def time_to_solution(
    p_s: float,
    t_a: float,
    target: float = TARGET,
    basis: Basis = "point",
) -> TtsResult:
    """Compute t_a * log(1 - target) / log(1 - p_s).

    p_s = 0 never succeeds and gives +inf; p_s = 1 gives t_a since a single
    anneal already meets the target.

    Args:
        p_s: Per-anneal success probability.
        t_a: Annealing time of one run, in steps.
        target: Desired overall success probability.
        basis: Which estimate of p_s was supplied.

    Raises:
        ContractViolationError: Unless 0 <= p_s <= 1 and t_a > 0.
    """
    if not 0.0 <= p_s <= 1.0:
        raise ContractViolationError(f"p_s must lie in [0, 1], got {p_s}")
    if t_a <= 0:
        raise ContractViolationError(f"t_a must be positive, got {t_a}")
    if not 0.0 < target < 1.0:
        raise ContractViolationError(f"target must lie in (0, 1), got {target}")

    if p_s == 0.0:
        tts = math.inf
    elif p_s == 1.0:
        tts = float(t_a)
    else:
        tts = t_a * math.log1p(-target) / math.log1p(-p_s)
    return TtsResult(tts=tts, target=target, basis=basis)


def restart_success(p: float, r: int) -> float:
    """Probability that at least one of ``r`` independent runs succeeds.

    Raises:
        ContractViolationError: Unless 0 <= p <= 1 and r >= 1.
    """
    if not 0.0 <= p <= 1.0:
        raise ContractViolationError(f"p must lie in [0, 1], got {p}")
    if r < 1:
        raise ContractViolationError(f"r must be at least 1, got {r}")
    return 1.0 - (1.0 - p) ** r


class RestartComparison(BaseModel):
    """One long anneal against floor(K / K') shorter ones with the same budget."""

    steps: int
    short_steps: int
    restarts: int
    p_single: float
    p_restart: float

    @property
    def divides(self) -> bool:
        """True when the shorter anneals use the full budget exactly (K' divides K)."""
        return self.steps % self.short_steps == 0

    @property
    def advantageous(self) -> bool:
        """True when the shorter anneals succeed more often."""
        return self.p_restart > self.p_single


def restart_comparison(
    p_long: float, p_short: float, steps: int, short_steps: int
) -> RestartComparison:
    """Compare one anneal of ``steps`` with repeated anneals of ``short_steps``.

    Raises:
        ContractViolationError: Unless 1 <= short_steps <= steps.
    """
    if not 1 <= short_steps <= steps:
        raise ContractViolationError(f"need 1 <= K' <= K, got K'={short_steps}, K={steps}")
    restarts = steps // short_steps
    return RestartComparison(
        steps=steps,
        short_steps=short_steps,
        restarts=restarts,
        p_single=p_long,
        p_restart=restart_success(p_short, restarts),
    )
