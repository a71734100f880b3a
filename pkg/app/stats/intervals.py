"""Exact Clopper-Pearson binomial confidence intervals."""

from scipy.optimize import bisect
from scipy.stats import binom

from app.errors import ContractViolationError

TOLERANCE = 1e-10


def clopper_pearson(successes: int, repetitions: int, alpha: float = 0.05) -> tuple[float, float]:
    """Two-sided exact interval for a binomial success probability.

    The lower bound is the largest p with P(Bin(R, p) >= k) <= alpha/2 and the
    upper bound the smallest p with P(Bin(R, p) <= k) <= alpha/2, both found by
    bisection on the binomial tail to absolute tolerance 1e-10.

    Args:
        successes: Observed successes k.
        repetitions: Trials R.
        alpha: Significance level (0.05 gives a 95% interval).

    Returns:
        ``(low, high)``; low is 0 when k = 0 and high is 1 when k = R.

    Raises:
        ContractViolationError: Unless 0 <= k <= R, R >= 1 and 0 < alpha < 1.
    """
    if repetitions < 1 or not 0 <= successes <= repetitions:
        raise ContractViolationError(
            f"need 0 <= k <= R and R >= 1, got k={successes}, R={repetitions}"
        )
    if not 0.0 < alpha < 1.0:
        raise ContractViolationError(f"alpha must lie in (0, 1), got {alpha}")

    tail = alpha / 2.0
    k, r = successes, repetitions
    if k == 0:
        low = 0.0
    else:
        low = bisect(lambda p: binom.sf(k - 1, r, p) - tail, 0.0, 1.0, xtol=TOLERANCE)
    if k == r:
        high = 1.0
    else:
        high = bisect(lambda p: binom.cdf(k, r, p) - tail, 0.0, 1.0, xtol=TOLERANCE)

    point = k / r
    return min(float(low), point), max(float(high), point)
