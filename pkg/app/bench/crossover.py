"""Crossover of two mean-success curves over the relative annealing time K/N."""

import logging
from collections.abc import Sequence
from pathlib import Path

from pydantic import BaseModel, Field

from app.bench.report import CurvePoint, aggregate_curves
from app.bench.schemas import BenchMethod, ResultRecord
from app.bench.storage import ExperimentStore
from app.errors import ReportError

logger = logging.getLogger(__name__)

MIN_RATIOS = 4
NO_CROSSOVER = "no crossover in sampled range"


class Crossing(BaseModel):
    """One sign change of p_a - p_b between neighboring sampled ratios."""

    ratio_low: float
    ratio_high: float
    ratio_estimate: float = Field(..., description="Linear interpolation of the zero")
    ci_overlap: bool = Field(
        ..., description="Intervals overlap at both ends, so the crossing is not resolved"
    )


class CrossoverSummary(BaseModel):
    """Crossover analysis for one spin count."""

    n: int
    method_a: BenchMethod
    method_b: BenchMethod
    ratios: list[float]
    status: str
    crossings: list[Crossing] = Field(default_factory=list)


def _overlap(a: CurvePoint, b: CurvePoint) -> bool:
    return a.ci_low <= b.ci_high and b.ci_low <= a.ci_high


def find_crossings(
    points_a: Sequence[CurvePoint], points_b: Sequence[CurvePoint]
) -> list[Crossing]:
    """Locate sign changes between two curves sampled at the same ratios.

    Both sequences must be sorted by ratio and aligned point by point.
    """
    crossings = []
    diffs = [a.p_s - b.p_s for a, b in zip(points_a, points_b, strict=True)]
    for i in range(len(diffs) - 1):
        left, right = diffs[i], diffs[i + 1]
        if left == 0.0 or left * right >= 0.0:
            continue
        r_low, r_high = points_a[i].ratio, points_a[i + 1].ratio
        estimate = r_low + (r_high - r_low) * left / (left - right)
        crossings.append(
            Crossing(
                ratio_low=r_low,
                ratio_high=r_high,
                ratio_estimate=estimate,
                ci_overlap=_overlap(points_a[i], points_b[i])
                and _overlap(points_a[i + 1], points_b[i + 1]),
            )
        )
    # exact ties at a sampled ratio count only when the sign differs on both sides
    for i in range(1, len(diffs) - 1):
        if diffs[i] == 0.0 and diffs[i - 1] * diffs[i + 1] < 0.0:
            ratio = points_a[i].ratio
            crossings.append(
                Crossing(ratio_low=ratio, ratio_high=ratio, ratio_estimate=ratio, ci_overlap=True)
            )
    return sorted(crossings, key=lambda c: c.ratio_low)


def analyze_crossover(
    records: Sequence[ResultRecord],
    method_a: BenchMethod = BenchMethod.SA,
    method_b: BenchMethod = BenchMethod.SAM,
    alpha: float = 0.05,
) -> list[CrossoverSummary]:
    """Find where the mean-success curves of two methods cross, per n.

    Args:
        records: Records of a ratio sweep.
        method_a: First method (SA by default).
        method_b: Second method (SAM by default).
        alpha: Significance level of the pooled intervals.

    Returns:
        One summary per spin count, in ascending n.

    Raises:
        ReportError: If a spin count has fewer than four ratios sampled for both methods.
    """
    curves: dict[tuple[int, BenchMethod], dict[float, CurvePoint]] = {}
    for point in aggregate_curves(records, alpha):
        curves.setdefault((point.n, point.method), {})[point.ratio] = point

    sizes = sorted({n for n, method in curves if method in (method_a, method_b)})
    if not sizes:
        raise ReportError(f"no records for {method_a.value} or {method_b.value}")

    summaries = []
    for n in sizes:
        curve_a = curves.get((n, method_a), {})
        curve_b = curves.get((n, method_b), {})
        ratios = sorted(set(curve_a) & set(curve_b))
        if len(ratios) < MIN_RATIOS:
            raise ReportError(
                f"n={n}: crossover needs at least {MIN_RATIOS} ratios sampled for both "
                f"{method_a.value} and {method_b.value}, got {len(ratios)}"
            )
        crossings = find_crossings([curve_a[r] for r in ratios], [curve_b[r] for r in ratios])
        status = "crossover" if crossings else NO_CROSSOVER
        logger.info(f"n={n}: {status} ({len(crossings)} sign change(s))")
        summaries.append(
            CrossoverSummary(
                n=n,
                method_a=method_a,
                method_b=method_b,
                ratios=ratios,
                status=status,
                crossings=crossings,
            )
        )
    return summaries


def cmd_crossover(
    records: Sequence[ResultRecord],
    store: ExperimentStore,
    method_a: BenchMethod = BenchMethod.SA,
    method_b: BenchMethod = BenchMethod.SAM,
    alpha: float = 0.05,
) -> tuple[list[CrossoverSummary], Path]:
    """Analyze the crossover and write ``reports/crossover.json``."""
    summaries = analyze_crossover(records, method_a, method_b, alpha)
    path = store.write_json("crossover", [s.model_dump(mode="json") for s in summaries])
    return summaries, path
