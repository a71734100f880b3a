"""Plot-data reports built from result records."""

import logging
from collections import defaultdict
from collections.abc import Sequence
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from app.bench.schemas import BenchMethod, ResultRecord
from app.bench.storage import ExperimentStore
from app.errors import ReportError
from app.oracle import bf_success_probability
from app.stats import clopper_pearson, restart_comparison, time_to_solution

logger = logging.getLogger(__name__)

# (x, y) method pairs of the TTS scatter plots
SCATTER_PAIRS: tuple[tuple[BenchMethod, BenchMethod], ...] = (
    (BenchMethod.SA, BenchMethod.SAM),
    (BenchMethod.SAM, BenchMethod.SAQ),
)


class ReportMode(str, Enum):
    """Available report layouts."""

    SUCCESS_VS_N = "success_vs_n"
    TTS_SCATTER = "tts_scatter"
    SUCCESS_VS_RATIO = "success_vs_ratio"
    RESTART_GAIN = "restart_gain"


class CurvePoint(BaseModel):
    """Success statistics of one (n, method, ratio), pooled over realizations."""

    n: int
    method: BenchMethod
    ratio: float
    K: int
    realizations: int
    p_s: float
    ci_low: float
    ci_high: float
    best_p_s: float | None
    bf_analytic: float


def aggregate_curves(records: Sequence[ResultRecord], alpha: float = 0.05) -> list[CurvePoint]:
    """Group records by (n, method, ratio).

    ``p_s`` is the mean over realizations. The interval pools successes and
    repetitions of all realizations; analytic brute-force points carry a
    zero-width interval.

    Returns:
        Points sorted by n, method and ratio.
    """
    groups: dict[tuple[int, BenchMethod, float], list[ResultRecord]] = defaultdict(list)
    for record in records:
        groups[(record.n, record.method, record.ratio)].append(record)

    points = []
    for (n, method, ratio), group in sorted(
        groups.items(), key=lambda item: (item[0][0], item[0][1].value, item[0][2])
    ):
        steps = group[0].K
        p_s = sum(r.p_s for r in group) / len(group)
        bf = sum(bf_success_probability(1 << n, steps, r.g) for r in group) / len(group)

        if any(r.R is None or r.successes is None for r in group):
            low, high, best = p_s, p_s, None
        else:
            successes = sum(r.successes or 0 for r in group)
            repetitions = sum(r.R or 0 for r in group)
            low, high = clopper_pearson(successes, repetitions, alpha)
            best = sum(r.best_successes or 0 for r in group) / repetitions

        points.append(
            CurvePoint(
                n=n,
                method=method,
                ratio=ratio,
                K=steps,
                realizations=len(group),
                p_s=p_s,
                ci_low=min(low, p_s),
                ci_high=max(high, p_s),
                best_p_s=best,
                bf_analytic=bf,
            )
        )
    return points


def _point_row(point: CurvePoint) -> dict[str, Any]:
    row = point.model_dump()
    row["method"] = point.method.value
    return row


def _curve_rows(
    records: Sequence[ResultRecord], alpha: float, by_ratio: bool
) -> list[dict[str, Any]]:
    points = aggregate_curves(records, alpha)
    if not by_ratio:
        # one series per (method, ratio) plotted against n
        points.sort(key=lambda p: (p.method.value, p.ratio, p.n))
    rows = []
    for point in points:
        row = _point_row(point)
        row["tts"] = time_to_solution(point.p_s, point.K).tts
        rows.append(row)
    return rows


def _tts_scatter(records: Sequence[ResultRecord]) -> list[dict[str, Any]]:
    index = {(r.n, r.realization_index, r.ratio, r.method): r for r in records}
    rows = []
    for x_method, y_method in SCATTER_PAIRS:
        for (n, realization, ratio, method), x in sorted(
            index.items(), key=lambda item: (item[0][0], item[0][1], item[0][2])
        ):
            if method is not x_method:
                continue
            y = index.get((n, realization, ratio, y_method))
            if y is None:
                continue
            rows.append(
                {
                    "pair": f"{y_method.value}_vs_{x_method.value}",
                    "n": n,
                    "realization": realization,
                    "ratio": ratio,
                    "x_method": x_method.value,
                    "y_method": y_method.value,
                    "x": x.tts,
                    "x_lo": x.tts_ci_low,
                    "x_hi": x.tts_ci_high,
                    "y": y.tts,
                    "y_lo": y.tts_ci_low,
                    "y_hi": y.tts_ci_high,
                    "below_diagonal": y.tts < x.tts,
                }
            )
    if not rows:
        raise ReportError(
            "tts_scatter needs matching records for SA/SAM or SAM/SAQ on the same realization"
        )
    return rows


def _restart_gain(records: Sequence[ResultRecord], alpha: float) -> list[dict[str, Any]]:
    curves: dict[tuple[int, BenchMethod], list[CurvePoint]] = defaultdict(list)
    for point in aggregate_curves(records, alpha):
        curves[(point.n, point.method)].append(point)

    rows = []
    for (n, method), points in curves.items():
        by_steps = {point.K: point.p_s for point in points}
        budgets = sorted(by_steps)
        for steps in budgets:
            for short_steps in budgets:
                if short_steps >= steps:
                    break
                comparison = restart_comparison(
                    by_steps[steps], by_steps[short_steps], steps, short_steps
                )
                rows.append(
                    {
                        "n": n,
                        "method": method.value,
                        "K": steps,
                        "K_short": short_steps,
                        "restarts": comparison.restarts,
                        "divides": comparison.divides,
                        "p_single": comparison.p_single,
                        "p_restart": comparison.p_restart,
                        "advantageous": comparison.advantageous,
                    }
                )
    return rows


_CURVE_FIELDS = [
    "n", "method", "ratio", "K", "realizations", "p_s", "ci_low", "ci_high",
    "best_p_s", "bf_analytic", "tts",
]

_FIELDS: dict[ReportMode, list[str]] = {
    ReportMode.SUCCESS_VS_N: _CURVE_FIELDS,
    ReportMode.SUCCESS_VS_RATIO: _CURVE_FIELDS,
    ReportMode.TTS_SCATTER: [
        "pair", "n", "realization", "ratio", "x_method", "y_method",
        "x", "x_lo", "x_hi", "y", "y_lo", "y_hi", "below_diagonal",
    ],
    ReportMode.RESTART_GAIN: [
        "n", "method", "K", "K_short", "restarts", "divides", "p_single", "p_restart",
        "advantageous",
    ],
}


def build_report(
    records: Sequence[ResultRecord], mode: ReportMode | str, alpha: float = 0.05
) -> tuple[list[str], list[dict[str, Any]]]:
    """Compute the rows of a report without writing them.

    Args:
        records: Result records of one experiment.
        mode: Report layout.
        alpha: Significance level of pooled intervals.

    Returns:
        Column names and rows.

    Raises:
        ReportError: On an unknown mode, no records, or no matching method pairs.
    """
    try:
        mode = ReportMode(mode)
    except ValueError as e:
        raise ReportError(f"unknown report mode: {mode}") from e
    if not records:
        raise ReportError("no result records to report")

    if mode is ReportMode.SUCCESS_VS_N:
        rows = _curve_rows(records, alpha, by_ratio=False)
    elif mode is ReportMode.SUCCESS_VS_RATIO:
        rows = _curve_rows(records, alpha, by_ratio=True)
    elif mode is ReportMode.TTS_SCATTER:
        rows = _tts_scatter(records)
    else:
        rows = _restart_gain(records, alpha)
    return _FIELDS[mode], rows


def cmd_report(
    records: Sequence[ResultRecord],
    mode: ReportMode | str,
    store: ExperimentStore,
    alpha: float = 0.05,
) -> Path:
    """Write ``reports/<mode>.csv`` for ``records``."""
    fields, rows = build_report(records, mode, alpha)
    name = ReportMode(mode).value
    logger.info(f"{name}: {len(rows)} rows")
    return store.write_csv(name, fields, rows)
