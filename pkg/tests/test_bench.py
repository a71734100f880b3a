"""Tests for the benchmark pipeline: config, storage, run, report and crossover."""

import csv
import json
import math
from collections.abc import Callable
from pathlib import Path

import pytest
from pydantic import ValidationError

from app.bench import (
    NO_CROSSOVER,
    BenchMethod,
    ExperimentConfig,
    ExperimentStore,
    FamilySpec,
    ReportMode,
    ResultRecord,
    analyze_crossover,
    build_report,
    cmd_crossover,
    cmd_generate,
    cmd_report,
    cmd_run,
    runner,
    steps_for,
)
from app.config import settings
from app.errors import MissingInputError, ReportError
from app.generators import ProblemFamily
from app.oracle import bf_success_probability

RecordFactory = Callable[..., ResultRecord]


class TestConfig:
    def test_steps_for(self) -> None:
        assert steps_for(4, 1.0) == 16
        assert steps_for(4, 0.01) == 1
        assert steps_for(12, 0.08) == 328
        assert steps_for(16, 0.5) == 32768

    def test_cells_cover_every_combination(self, small_config: ExperimentConfig) -> None:
        cells = small_config.cells()
        assert len(cells) == 1 * 2 * 3 * 2
        assert len({cell.cell_id for cell in cells}) == len(cells)
        assert cells[0].cell_id == "zero_coupling/n4/r0/SA/ratio1/K16"

    def test_deterministic_family_has_one_realization(self, tmp_path: Path) -> None:
        config = ExperimentConfig(
            family=FamilySpec(name=ProblemFamily.FALSE_MINIMUM),
            n_values=[4, 8],
            realizations=100,
            output_dir=tmp_path,
        )
        assert config.realization_count == 1
        assert len(config.cells()) == 2 * 2

    def test_repetitions_fall_back_to_default(self, small_config: ExperimentConfig) -> None:
        assert small_config.repetitions_for(4) == 40
        assert small_config.repetitions_for(20) == 100

    @pytest.mark.parametrize(
        "overrides",
        [
            {"ratios": [0.0]},
            {"ratios": [1.5]},
            {"methods": ["SA", "SA"]},
            {"repetitions": {"4": 0}},
            {"family": {"name": "false_minimum"}, "n_values": [6]},
            {"family": {"name": "spin_ice"}},
        ],
    )
    def test_invalid_configs(self, overrides: dict[str, object]) -> None:
        data: dict[str, object] = {"family": {"name": "zero_coupling"}, "n_values": [4]}
        data.update(overrides)
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate(data)

    def test_json_round_trip(self, small_config: ExperimentConfig) -> None:
        loaded = ExperimentConfig.model_validate_json(small_config.model_dump_json())
        assert loaded == small_config


class TestStorage:
    def test_records_round_trip_with_infinite_tts(
        self, store: ExperimentStore, make_record: RecordFactory
    ) -> None:
        record = make_record(
            BenchMethod.SA, 0.5, successes=0, repetitions=10, tts=math.inf, tts_ci_high=math.inf
        )
        store.append_record(record.model_copy(update={"wall_clock_seconds": 1.5}))
        line = store.results_path.read_text(encoding="utf-8")
        assert "wall_clock_seconds" not in line
        assert json.loads(line)["method"] == "SA"

        (loaded,) = store.load_records()
        assert loaded.tts == math.inf
        assert loaded.wall_clock_seconds == 1.5
        assert loaded.method is BenchMethod.SA

    def test_results_lines_are_strict_json(
        self, store: ExperimentStore, make_record: RecordFactory
    ) -> None:
        def reject(token: str) -> None:
            raise ValueError(f"non-standard JSON token {token}")

        store.append_record(
            make_record(
                BenchMethod.SA, 0.5, successes=0, repetitions=10, tts=math.inf, tts_ci_high=math.inf
            )
        )
        store.append_record(make_record(BenchMethod.SAM, 0.5, successes=4, repetitions=10))
        lines = store.results_path.read_text(encoding="utf-8").splitlines()
        rows = [json.loads(line, parse_constant=reject) for line in lines]
        assert rows[0]["tts"] == "Infinity"
        assert rows[0]["tts_ci_high"] == "Infinity"
        assert math.isfinite(rows[1]["tts"])

        loaded = store.load_records()
        assert loaded[0].tts == math.inf
        assert loaded[0].tts_ci_high == math.inf
        assert loaded[1].tts == pytest.approx(rows[1]["tts"])

    def test_truncated_tail_is_dropped(
        self, store: ExperimentStore, make_record: RecordFactory
    ) -> None:
        store.append_record(make_record(BenchMethod.SA, 0.5, successes=3, repetitions=10))
        with store.results_path.open("a", encoding="utf-8") as f:
            f.write('{"cell_id": "gaussian_gl')
        assert len(store.load_records()) == 1
        assert store.results_path.read_text(encoding="utf-8").endswith("\n")

    def test_missing_results(self, store: ExperimentStore) -> None:
        with pytest.raises(MissingInputError):
            store.load_records()


class TestPipeline:
    def test_generate_writes_problem_and_minima(
        self, small_config: ExperimentConfig, store: ExperimentStore
    ) -> None:
        minima_sets = cmd_generate(small_config, store)
        assert len(minima_sets) == 2
        for realization in range(2):
            assert store.problem_path("zero_coupling", 4, realization).exists()
            assert store.minima_path("zero_coupling", 4, realization).exists()

    def test_generate_is_byte_identical(
        self, small_config: ExperimentConfig, store: ExperimentStore
    ) -> None:
        cmd_generate(small_config, store)
        path = store.problem_path("zero_coupling", 4, 1)
        before = path.read_bytes()
        path.unlink()
        cmd_generate(small_config, store)
        assert path.read_bytes() == before

    def test_run_requires_generated_problems(
        self, small_config: ExperimentConfig, store: ExperimentStore
    ) -> None:
        with pytest.raises(MissingInputError):
            cmd_run(small_config, store)

    def test_run_produces_complete_records(
        self, small_config: ExperimentConfig, store: ExperimentStore
    ) -> None:
        cmd_generate(small_config, store)
        records = cmd_run(small_config, store)
        assert len(records) == len(small_config.cells())
        assert len(store.load_records()) == len(records)

        for record in records:
            assert 0.0 <= record.ci_low <= record.p_s <= record.ci_high <= 1.0
            if record.method is BenchMethod.BF:
                assert record.R is None
                assert record.ci_low == record.ci_high == record.p_s
            else:
                assert record.R == 40
                assert record.successes is not None
                assert record.best_successes is not None
                assert record.best_successes >= record.successes

        full_budget_bf = [r for r in records if r.method is BenchMethod.BF and r.ratio == 1.0]
        assert all(r.p_s == 1.0 for r in full_budget_bf)

    def test_reruns_are_byte_identical(
        self, small_config: ExperimentConfig, tmp_path: Path
    ) -> None:
        outputs = []
        for name in ("first", "second"):
            store = ExperimentStore(tmp_path / name)
            cmd_generate(small_config, store)
            cmd_run(small_config, store)
            outputs.append(store.results_path.read_bytes())
        assert outputs[0] == outputs[1]

    def test_worker_count_does_not_change_results(
        self, small_config: ExperimentConfig, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setattr(settings, "repetition_chunk", 7)
        outputs = []
        for workers in (1, 2):
            store = ExperimentStore(tmp_path / f"w{workers}")
            cmd_generate(small_config, store)
            cmd_run(small_config, store, workers=workers)
            outputs.append(store.results_path.read_bytes())
        assert outputs[0] == outputs[1]

    def test_unavailable_pool_runs_in_one_process(
        self, small_config: ExperimentConfig, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        reference = ExperimentStore(tmp_path / "reference")
        cmd_generate(small_config, reference)
        cmd_run(small_config, reference)

        def no_processes(*args: object, **kwargs: object) -> None:
            raise PermissionError("process creation not permitted")

        monkeypatch.setattr(runner, "ProcessPoolExecutor", no_processes)
        store = ExperimentStore(tmp_path / "fallback")
        cmd_generate(small_config, store)
        records = cmd_run(small_config, store, workers=4)
        assert len(records) == len(small_config.cells())
        assert store.results_path.read_bytes() == reference.results_path.read_bytes()

    def test_write_failure_is_not_retried(
        self,
        small_config: ExperimentConfig,
        store: ExperimentStore,
        monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        cmd_generate(small_config, store)
        append = ExperimentStore.append_record
        calls = 0

        def append_then_fail(self: ExperimentStore, record: ResultRecord) -> None:
            nonlocal calls
            calls += 1
            append(self, record)
            if calls == 2:
                raise OSError("no space left on device")

        monkeypatch.setattr(ExperimentStore, "append_record", append_then_fail)
        with pytest.raises(OSError, match="no space left"):
            cmd_run(small_config, store, workers=2)

        lines = store.results_path.read_text(encoding="utf-8").splitlines()
        cell_ids = [json.loads(line)["cell_id"] for line in lines]
        assert len(cell_ids) == 2
        assert len(set(cell_ids)) == 2

    def test_resume_completes_interrupted_run(
        self, small_config: ExperimentConfig, tmp_path: Path
    ) -> None:
        reference = ExperimentStore(tmp_path / "reference")
        cmd_generate(small_config, reference)
        cmd_run(small_config, reference)
        expected = reference.results_path.read_text(encoding="utf-8")

        store = ExperimentStore(tmp_path / "resumed")
        cmd_generate(small_config, store)
        cmd_run(small_config, store)
        lines = store.results_path.read_text(encoding="utf-8").splitlines(keepends=True)
        store.results_path.write_text("".join(lines[:3]) + lines[3][:20], encoding="utf-8")

        produced = cmd_run(small_config, store, resume=True)
        assert len(produced) == len(lines) - 3
        assert store.results_path.read_text(encoding="utf-8") == expected


class TestReport:
    def test_success_vs_n_one_row_per_size_and_method(self, make_record: RecordFactory) -> None:
        records = [
            make_record(method, 1.0, successes=s, repetitions=100, n=n)
            for n in (4, 8)
            for method, s in ((BenchMethod.SA, 90), (BenchMethod.SAM, 60))
        ]
        fields, rows = build_report(records, ReportMode.SUCCESS_VS_N)
        assert len(rows) == 4
        assert {(row["n"], row["method"]) for row in rows} == {
            (4, "SA"), (8, "SA"), (4, "SAM"), (8, "SAM")
        }
        assert set(fields) == set(rows[0])

    def test_success_vs_ratio_includes_brute_force_curve(
        self, make_record: RecordFactory
    ) -> None:
        records = [
            make_record(BenchMethod.BF, 1.0, p_s=1.0, n=4),
            make_record(BenchMethod.BF, 0.5, p_s=0.5 * (32 - 8 - 1) / 15, n=4),
            make_record(BenchMethod.SA, 1.0, successes=9, repetitions=10, n=4),
        ]
        _, rows = build_report(records, "success_vs_ratio")
        full = next(r for r in rows if r["method"] == "BF" and r["ratio"] == 1.0)
        assert full["p_s"] == 1.0
        assert full["bf_analytic"] == 1.0
        sa = next(r for r in rows if r["method"] == "SA")
        assert sa["ci_low"] < 0.9 < sa["ci_high"]

    def test_pooling_over_realizations(self, make_record: RecordFactory) -> None:
        records = [
            make_record(BenchMethod.SA, 1.0, successes=s, repetitions=100, realization=r)
            for r, s in enumerate((20, 40, 60))
        ]
        _, rows = build_report(records, ReportMode.SUCCESS_VS_RATIO)
        (row,) = rows
        assert row["realizations"] == 3
        assert row["p_s"] == pytest.approx(0.4)
        assert row["ci_low"] < 0.4 < row["ci_high"]

    def test_tts_scatter_pairs_methods(self, make_record: RecordFactory) -> None:
        records = []
        for realization in range(3):
            for method, tts in ((BenchMethod.SA, 100.0), (BenchMethod.SAM, 50.0)):
                records.append(
                    make_record(
                        method,
                        0.5,
                        successes=5,
                        repetitions=10,
                        realization=realization,
                        tts=tts,
                        tts_ci_low=tts / 2,
                        tts_ci_high=tts * 2,
                    )
                )
        _, rows = build_report(records, ReportMode.TTS_SCATTER)
        assert len(rows) == 3
        for row in rows:
            assert row["pair"] == "SAM_vs_SA"
            assert (row["x"], row["y"]) == (100.0, 50.0)
            assert (row["x_lo"], row["x_hi"], row["y_lo"], row["y_hi"]) == (50, 200, 25, 100)
            assert row["below_diagonal"] is True

    def test_tts_scatter_needs_pairs(self, make_record: RecordFactory) -> None:
        records = [make_record(BenchMethod.SAQ, 0.5, successes=5, repetitions=10)]
        with pytest.raises(ReportError):
            build_report(records, ReportMode.TTS_SCATTER)

    def test_unknown_mode(self, make_record: RecordFactory) -> None:
        records = [make_record(BenchMethod.SA, 0.5, successes=5, repetitions=10)]
        with pytest.raises(ReportError):
            build_report(records, "histogram")

    def test_restart_gain_for_brute_force(self, make_record: RecordFactory) -> None:
        records = [
            make_record(BenchMethod.BF, ratio, p_s=bf_success_probability(256, steps, 2), n=8)
            for ratio, steps in ((0.125, 32), (0.25, 64), (0.5, 128), (1.0, 256))
        ]
        _, rows = build_report(records, ReportMode.RESTART_GAIN)
        assert len(rows) == 6
        assert not any(row["advantageous"] for row in rows)
        assert all(row["divides"] for row in rows)

    def test_restart_gain_flags_budgets_that_do_not_divide(
        self, make_record: RecordFactory
    ) -> None:
        records = [
            make_record(BenchMethod.SA, ratio, successes=successes, repetitions=100, n=8)
            for ratio, successes in ((0.25, 20), (0.375, 30), (0.5, 40))
        ]
        fields, rows = build_report(records, ReportMode.RESTART_GAIN)
        assert "divides" in fields
        flags = {(row["K"], row["K_short"]): row["divides"] for row in rows}
        assert flags == {(96, 64): False, (128, 64): True, (128, 96): False}
        assert {row["restarts"] for row in rows if not row["divides"]} == {1}

    def test_csv_export(
        self, store: ExperimentStore, make_record: RecordFactory
    ) -> None:
        records = [
            make_record(BenchMethod.SA, 0.5, successes=0, repetitions=10),
            make_record(BenchMethod.SAM, 0.5, successes=4, repetitions=10),
        ]
        path = cmd_report(records, ReportMode.SUCCESS_VS_N, store)
        assert path == store.reports_dir / "success_vs_n.csv"
        with path.open(encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        sa = next(r for r in rows if r["method"] == "SA")
        assert sa["tts"] == "inf"


def _crossing_records(make_record: RecordFactory, ratios: list[float]) -> list[ResultRecord]:
    records = []
    for ratio in ratios:
        records.append(make_record(BenchMethod.SA, ratio, successes=6000))
        sam = round((0.6 + 0.4 * (ratio - 0.1)) * 10_000)
        records.append(make_record(BenchMethod.SAM, ratio, successes=sam))
    return records


class TestCrossover:
    def test_detects_crossing_at_known_ratio(self, make_record: RecordFactory) -> None:
        records = _crossing_records(make_record, [0.01, 0.05, 0.2, 0.5, 1.0])
        (summary,) = analyze_crossover(records)
        assert summary.status == "crossover"
        (crossing,) = summary.crossings
        assert crossing.ratio_low <= 0.1 <= crossing.ratio_high
        assert crossing.ratio_estimate == pytest.approx(0.1, abs=1e-9)

    def test_no_crossover(self, make_record: RecordFactory) -> None:
        records = []
        for ratio in (0.01, 0.1, 0.5, 1.0):
            records.append(make_record(BenchMethod.SA, ratio, successes=8000))
            records.append(make_record(BenchMethod.SAM, ratio, successes=5000))
        (summary,) = analyze_crossover(records)
        assert summary.status == NO_CROSSOVER
        assert summary.crossings == []

    def test_overlapping_intervals_are_flagged(self, make_record: RecordFactory) -> None:
        records = []
        for ratio, sa, sam in ((0.01, 6, 5), (0.1, 6, 7), (0.5, 6, 8), (1.0, 6, 9)):
            records.append(make_record(BenchMethod.SA, ratio, successes=sa, repetitions=10))
            records.append(make_record(BenchMethod.SAM, ratio, successes=sam, repetitions=10))
        (summary,) = analyze_crossover(records)
        (crossing,) = summary.crossings
        assert crossing.ci_overlap

    def test_needs_four_ratios(self, make_record: RecordFactory) -> None:
        records = _crossing_records(make_record, [0.05, 0.2, 0.5])
        with pytest.raises(ReportError):
            analyze_crossover(records)

    def test_writes_json(self, store: ExperimentStore, make_record: RecordFactory) -> None:
        records = _crossing_records(make_record, [0.01, 0.05, 0.2, 0.5, 1.0])
        _, path = cmd_crossover(records, store)
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload[0]["n"] == 12
        assert payload[0]["method_a"] == "SA"
        assert payload[0]["crossings"][0]["ratio_low"] == 0.05
