"""Statistics module."""

from app.stats.estimate import (
    SuccessEstimate,
    TtsInterval,
    estimate,
    estimate_counts,
    tts_interval,
)
from app.stats.intervals import clopper_pearson
from app.stats.tts import (
    TARGET,
    RestartComparison,
    TtsResult,
    restart_comparison,
    restart_success,
    time_to_solution,
)

__all__ = [
    "TARGET",
    "RestartComparison",
    "SuccessEstimate",
    "TtsInterval",
    "TtsResult",
    "clopper_pearson",
    "estimate",
    "estimate_counts",
    "restart_comparison",
    "restart_success",
    "time_to_solution",
    "tts_interval",
]
