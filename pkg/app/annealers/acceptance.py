"""Acceptance probabilities for uphill or level moves."""

import math

from app.errors import ContractViolationError


def _check(delta_e: float, temperature: float) -> None:
    if delta_e < 0:
        raise ContractViolationError(f"delta_e must be non-negative, got {delta_e}")
    if temperature < 0:
        raise ContractViolationError(f"temperature must be non-negative, got {temperature}")


def accept_prob_boltzmann(delta_e: float, temperature: float) -> float:
    """Metropolis factor exp(-delta_e / T).

    A zero temperature only arises from T0 = 0 (the all-zero model) and accepts
    every move.
    """
    _check(delta_e, temperature)
    if temperature == 0:
        return 1.0
    return min(1.0, max(0.0, math.exp(-delta_e / temperature)))


def accept_prob_quantum(delta_e: float, temperature: float, distance: int) -> float:
    """Tunneling-like factor exp(-d * sqrt(delta_e / T)) for barrier width ``d``."""
    _check(delta_e, temperature)
    if distance < 1:
        raise ContractViolationError(f"Hamming distance must be at least 1, got {distance}")
    if temperature == 0:
        return 1.0
    return min(1.0, max(0.0, math.exp(-distance * math.sqrt(delta_e / temperature))))
