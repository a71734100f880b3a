"""Success probability of evaluating K distinct random states."""

from typing import overload

import numpy as np
import numpy.typing as npt

from app.errors import ContractViolationError


@overload
def bf_success_probability(num_states: int, steps: int, g: int) -> float: ...


@overload
def bf_success_probability(
    num_states: int, steps: npt.NDArray[np.integer], g: int
) -> npt.NDArray[np.float64]: ...


def bf_success_probability(
    num_states: int, steps: int | npt.NDArray[np.integer], g: int
) -> float | npt.NDArray[np.float64]:
    """Probability that K distinct uniform states include at least one of g minima.

    Evaluates ``1 - C(N-g, K) / C(N, K)`` as
    ``-expm1(sum_{i<g} log1p(-K / (N - i)))``, which stays accurate for
    N = 2**24 and reduces to ``K (2N - K - 1) / (N (N - 1))`` for g = 2.

    Args:
        num_states: State-space size N.
        steps: Evaluation budget K (scalar or array).
        g: Number of global minima.

    Returns:
        Success probability, with the shape of ``steps``.

    Raises:
        ContractViolationError: Unless 1 <= K <= N and 1 <= g <= N.
    """
    k = np.asarray(steps, dtype=np.float64)
    if num_states < 1 or not 1 <= g <= num_states:
        raise ContractViolationError(f"need 1 <= g <= N, got g={g}, N={num_states}")
    if k.size == 0 or k.min() < 1 or k.max() > num_states:
        raise ContractViolationError(f"need 1 <= K <= N={num_states}")

    offsets = np.arange(g, dtype=np.float64)
    certain = k > num_states - g
    safe_k = np.where(certain, 0.0, k)
    logs = np.log1p(-safe_k[..., None] / (num_states - offsets)).sum(axis=-1)
    probability = np.where(certain, 1.0, -np.expm1(logs))
    if np.ndim(steps) == 0:
        return float(probability)
    return probability


def sample_bf_success(
    num_states: int, steps: int, g: int, trials: int, rng: np.random.Generator
) -> float:
    """Monte Carlo estimate of :func:`bf_success_probability`.

    Labels ``0..g-1`` stand in for the minima; each trial draws K distinct labels.
    """
    hits = 0
    for _ in range(trials):
        chosen = rng.choice(num_states, size=steps, replace=False)
        hits += bool(np.any(chosen < g))
    return hits / trials
