"""Benchmark pipeline: generate, run, report, crossover."""

from app.bench.crossover import (
    NO_CROSSOVER,
    Crossing,
    CrossoverSummary,
    analyze_crossover,
    cmd_crossover,
    find_crossings,
)
from app.bench.report import (
    CurvePoint,
    ReportMode,
    aggregate_curves,
    build_report,
    cmd_report,
)
from app.bench.runner import cmd_generate, cmd_run, run_cell
from app.bench.schemas import (
    DEFAULT_RATIO_GRID,
    DEFAULT_REPETITIONS,
    BenchMethod,
    CellKey,
    ExperimentConfig,
    FamilySpec,
    ResultRecord,
    steps_for,
)
from app.bench.storage import ExperimentStore, load_config

__all__ = [
    "DEFAULT_RATIO_GRID",
    "DEFAULT_REPETITIONS",
    "NO_CROSSOVER",
    "BenchMethod",
    "CellKey",
    "Crossing",
    "CrossoverSummary",
    "CurvePoint",
    "ExperimentConfig",
    "ExperimentStore",
    "FamilySpec",
    "ReportMode",
    "ResultRecord",
    "aggregate_curves",
    "analyze_crossover",
    "build_report",
    "cmd_crossover",
    "cmd_generate",
    "cmd_report",
    "cmd_run",
    "find_crossings",
    "load_config",
    "run_cell",
    "steps_for",
]
