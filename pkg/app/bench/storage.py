"""File layout of an experiment directory.

    <root>/problems/<family>/n<n>/r<realization>.problem.json
    <root>/problems/<family>/n<n>/r<realization>.minima.json
    <root>/results.jsonl     one ResultRecord per line, no wall-clock column
    <root>/timings.jsonl     {"cell_id", "wall_clock_seconds"} per line
    <root>/reports/<name>.csv|json
"""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from app.bench.schemas import ExperimentConfig, ResultRecord
from app.errors import MissingInputError
from app.ising import IsingModel, load_model, save_model
from app.oracle import MinimaSet, load_minima, save_minima

logger = logging.getLogger(__name__)


def load_config(path: Path) -> ExperimentConfig:
    """Read an experiment config file.

    Raises:
        MissingInputError: If the file does not exist.
    """
    if not path.exists():
        raise MissingInputError(f"config file not found: {path}")
    return ExperimentConfig.model_validate_json(path.read_text(encoding="utf-8"))


class ExperimentStore:
    """Reads and writes every artifact of one experiment directory."""

    def __init__(self, root: Path) -> None:
        self.root = root

    @property
    def results_path(self) -> Path:
        return self.root / "results.jsonl"

    @property
    def timings_path(self) -> Path:
        return self.root / "timings.jsonl"

    @property
    def reports_dir(self) -> Path:
        return self.root / "reports"

    def _stem(self, family: str, n: int, realization: int) -> Path:
        return self.root / "problems" / family / f"n{n}" / f"r{realization}"

    def problem_path(self, family: str, n: int, realization: int) -> Path:
        """Path of a problem file."""
        return self._stem(family, n, realization).with_suffix(".problem.json")

    def minima_path(self, family: str, n: int, realization: int) -> Path:
        """Path of the cached minima set for a problem."""
        return self._stem(family, n, realization).with_suffix(".minima.json")

    def save_problem(self, model: IsingModel, n: int, realization: int) -> Path:
        """Write a problem file for ``(model.family, n, realization)``."""
        return save_model(model, self.problem_path(model.family, n, realization))

    def load_problem(self, family: str, n: int, realization: int) -> IsingModel:
        """Load a problem file."""
        return load_model(self.problem_path(family, n, realization))

    def save_minima(self, minima: MinimaSet, family: str, n: int, realization: int) -> Path:
        """Write the minima cache for a problem."""
        return save_minima(minima, self.minima_path(family, n, realization))

    def load_minima(self, family: str, n: int, realization: int) -> MinimaSet:
        """Load the minima cache for a problem."""
        return load_minima(self.minima_path(family, n, realization))

    def reset_results(self) -> None:
        """Remove previous results so a fresh run starts from an empty file."""
        for path in (self.results_path, self.timings_path):
            path.unlink(missing_ok=True)

    def _read_lines(self, path: Path) -> list[dict[str, Any]]:
        if not path.exists():
            return []
        rows: list[dict[str, Any]] = []
        lines = path.read_text(encoding="utf-8").splitlines(keepends=True)
        for index, line in enumerate(lines):
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError:
                if index != len(lines) - 1:
                    raise
                # An interrupted write leaves at most one partial trailing line
                logger.warning(f"dropping truncated line at end of {path}")
                path.write_text("".join(lines[:-1]), encoding="utf-8")
        return rows

    def load_records(self) -> list[ResultRecord]:
        """Load all records, joined with their wall-clock timings.

        Raises:
            MissingInputError: If no results file exists.
        """
        if not self.results_path.exists():
            raise MissingInputError(f"results file not found: {self.results_path}")
        timings = {
            row["cell_id"]: row["wall_clock_seconds"] for row in self._read_lines(self.timings_path)
        }
        records = []
        for row in self._read_lines(self.results_path):
            row["wall_clock_seconds"] = timings.get(row["cell_id"], 0.0)
            records.append(ResultRecord.from_dict(row))
        return records

    def completed_cells(self) -> set[str]:
        """Cell ids already present in the results file."""
        return {row["cell_id"] for row in self._read_lines(self.results_path)}

    def append_record(self, record: ResultRecord) -> None:
        """Append one record and its timing, flushing both files."""
        self.root.mkdir(parents=True, exist_ok=True)
        with self.results_path.open("a", encoding="utf-8") as f:
            f.write(record.to_json_line() + "\n")
        timing = {"cell_id": record.cell_id, "wall_clock_seconds": record.wall_clock_seconds}
        with self.timings_path.open("a", encoding="utf-8") as f:
            f.write(json.dumps(timing) + "\n")

    def write_csv(
        self, name: str, fieldnames: Sequence[str], rows: Iterable[dict[str, Any]]
    ) -> Path:
        """Write a report CSV under ``reports/``."""
        self.reports_dir.mkdir(parents=True, exist_ok=True)
        path = self.reports_dir / f"{name}.csv"
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=list(fieldnames))
            writer.writeheader()
            writer.writerows(rows)
        logger.info(f"wrote report: {path}")
        return path

    def write_json(self, name: str, payload: Any) -> Path:
        """Write a report JSON document under ``reports/``."""
        self.reports_dir.mkdir(parents=True, exist_ok=True)
        path = self.reports_dir / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        logger.info(f"wrote report: {path}")
        return path
