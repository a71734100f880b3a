"""Problem generation and cell execution for benchmark experiments."""

import logging
import time
from collections.abc import Callable
from concurrent.futures import Executor, ProcessPoolExecutor

from app.annealers import AnnealParams, Method, anneal_run, mark_success
from app.bench.schemas import BenchMethod, CellKey, ExperimentConfig, ResultRecord
from app.bench.storage import ExperimentStore
from app.config import settings
from app.errors import MissingInputError
from app.generators import GeneratorSeed, registry
from app.ising import IsingModel, dump_model
from app.oracle import MinimaSet, bf_success_probability, brute_force_minima
from app.stats import estimate_counts, time_to_solution, tts_interval
from app.streams import run_rng

logger = logging.getLogger(__name__)

ChunkArgs = tuple[IsingModel, frozenset[int], Method, CellKey, int, int, int]


def cmd_generate(config: ExperimentConfig, store: ExperimentStore) -> list[MinimaSet]:
    """Write every problem realization and its minima set.

    The oracle is skipped for a realization whose problem file is already on
    disk with identical content and whose minima file exists.

    Returns:
        Minima sets in (n, realization) order.
    """
    generator_params = config.family.params()
    if config.realization_count < config.realizations:
        logger.warning(
            f"{config.family.name.value} is deterministic; "
            f"generating 1 realization instead of {config.realizations}"
        )
    results: list[MinimaSet] = []
    for n in config.n_values:
        for realization in range(config.realization_count):
            seed = GeneratorSeed(master_seed=config.master_seed, realization_index=realization)
            model = registry.generate(config.family.name, n, seed, **generator_params)
            problem_path = store.problem_path(model.family, n, realization)
            minima_path = store.minima_path(model.family, n, realization)

            unchanged = (
                problem_path.exists()
                and problem_path.read_text(encoding="utf-8") == dump_model(model)
                and minima_path.exists()
            )
            if unchanged:
                logger.info(f"problem {problem_path} unchanged, reusing cached minima")
                results.append(store.load_minima(model.family, n, realization))
                continue

            store.save_problem(model, n, realization)
            minima = brute_force_minima(model)
            store.save_minima(minima, model.family, n, realization)
            logger.info(
                f"generated {model.family} n={n} r={realization}: "
                f"E_min={minima.min_energy:g}, g={minima.g}"
            )
            results.append(minima)
    return results


def _run_repetitions(args: ChunkArgs) -> tuple[int, int]:
    """Run repetitions ``[start, stop)`` of one cell and count successes."""
    model, minima, method, cell, master_seed, start, stop = args
    params = AnnealParams(method=method, steps=cell.steps)
    successes = 0
    best_successes = 0
    for repetition in range(start, stop):
        rng = run_rng(
            master_seed,
            cell.family.code,
            cell.n,
            cell.realization,
            cell.method.code,
            cell.steps,
            repetition,
        )
        outcome = mark_success(anneal_run(model, params, rng=rng), minima)
        successes += int(bool(outcome.success))
        best_successes += int(bool(outcome.best_success))
    return successes, best_successes


def _brute_force_record(cell: CellKey, minima: MinimaSet) -> ResultRecord:
    p_s = bf_success_probability(1 << cell.n, cell.steps, minima.g)
    tts = time_to_solution(p_s, cell.steps).tts
    return ResultRecord(
        cell_id=cell.cell_id,
        family=cell.family.value,
        n=cell.n,
        method=cell.method,
        realization_index=cell.realization,
        ratio=cell.ratio,
        K=cell.steps,
        g=minima.g,
        p_s=p_s,
        ci_low=p_s,
        ci_high=p_s,
        tts=tts,
        tts_ci_low=tts,
        tts_ci_high=tts,
    )


def run_cell(
    config: ExperimentConfig,
    cell: CellKey,
    model: IsingModel,
    minima: MinimaSet,
    executor: Executor | None = None,
) -> ResultRecord:
    """Evaluate one cell and return its aggregated record.

    Args:
        config: Experiment the cell belongs to.
        cell: Cell to evaluate.
        model: Problem realization of the cell.
        minima: Global minima of ``model``.
        executor: Pool for repetition chunks; runs inline when None.

    Returns:
        Record with success counts, interval and time to solution.
    """
    started = time.perf_counter()
    method = cell.method.annealer
    if method is None:
        record = _brute_force_record(cell, minima)
    else:
        repetitions = config.repetitions_for(cell.n)
        chunk = max(1, settings.repetition_chunk)
        labels = frozenset(minima.minima)
        seed = config.master_seed
        jobs: list[ChunkArgs] = [
            (model, labels, method, cell, seed, start, min(start + chunk, repetitions))
            for start in range(0, repetitions, chunk)
        ]
        if executor is not None:
            counts = list(executor.map(_run_repetitions, jobs))
        else:
            counts = [_run_repetitions(job) for job in jobs]
        successes = sum(c[0] for c in counts)
        best_successes = sum(c[1] for c in counts)

        est = estimate_counts(successes, repetitions, cell.steps, config.alpha)
        tts = tts_interval(est, cell.steps)
        record = ResultRecord(
            cell_id=cell.cell_id,
            family=cell.family.value,
            n=cell.n,
            method=cell.method,
            realization_index=cell.realization,
            ratio=cell.ratio,
            K=cell.steps,
            R=repetitions,
            successes=successes,
            best_successes=best_successes,
            g=minima.g,
            p_s=est.p_s,
            ci_low=est.ci_low,
            ci_high=est.ci_high,
            tts=tts.tts,
            tts_ci_low=tts.tts_ci_low,
            tts_ci_high=tts.tts_ci_high,
        )
    return record.model_copy(update={"wall_clock_seconds": time.perf_counter() - started})


def _process_cells(
    config: ExperimentConfig,
    store: ExperimentStore,
    cells: list[CellKey],
    executor: Executor | None,
    on_record: Callable[[ResultRecord], None] | None,
    records: list[ResultRecord],
) -> None:
    problems: dict[tuple[int, int], tuple[IsingModel, MinimaSet]] = {}
    for cell in cells:
        key = (cell.n, cell.realization)
        if key not in problems:
            try:
                problems[key] = (
                    store.load_problem(cell.family.value, cell.n, cell.realization),
                    store.load_minima(cell.family.value, cell.n, cell.realization),
                )
            except MissingInputError as e:
                raise MissingInputError(f"{e}; run 'generate' first") from e
        model, minima = problems[key]

        record = run_cell(config, cell, model, minima, executor)
        store.append_record(record)
        records.append(record)
        logger.info(
            f"{cell.cell_id}: p_s={record.p_s:.4g} "
            f"[{record.ci_low:.4g}, {record.ci_high:.4g}] in {record.wall_clock_seconds:.2f}s"
        )
        if on_record is not None:
            on_record(record)


def _start_pool(workers: int) -> ProcessPoolExecutor | None:
    """Start a worker pool, or return None when processes cannot be spawned."""
    try:
        executor = ProcessPoolExecutor(max_workers=workers)
    except (PermissionError, OSError) as exc:
        logger.warning(f"parallel execution unavailable ({exc}); falling back to one process")
        return None
    try:
        # Workers spawn lazily, so a trivial task surfaces start-up failures here
        executor.submit(int).result()
    except (PermissionError, OSError) as exc:
        executor.shutdown(cancel_futures=True)
        logger.warning(f"parallel execution unavailable ({exc}); falling back to one process")
        return None
    return executor


def cmd_run(
    config: ExperimentConfig,
    store: ExperimentStore,
    workers: int | None = None,
    resume: bool = False,
    on_record: Callable[[ResultRecord], None] | None = None,
) -> list[ResultRecord]:
    """Execute every cell of ``config`` and append the records to the results file.

    Cells are processed in a fixed order and each repetition owns its random
    stream, so the results file does not depend on ``workers``.

    Args:
        config: Experiment to run.
        store: Experiment directory, already populated by :func:`cmd_generate`.
        workers: Worker processes for repetition chunks (defaults to settings).
        resume: Keep existing records and skip their cells.
        on_record: Callback invoked after each record is written.

    Returns:
        Records produced by this invocation.

    Raises:
        MissingInputError: If a problem or minima file is missing.
        OSError: If writing the results file fails.
    """
    workers = settings.workers if workers is None else workers
    if resume:
        done = store.completed_cells()
        logger.info(f"resuming: {len(done)} cells already complete")
    else:
        store.reset_results()
        done = set()
    pending = [cell for cell in config.cells() if cell.cell_id not in done]
    logger.info(f"running {len(pending)} cells with {workers} worker(s)")

    records: list[ResultRecord] = []
    executor = _start_pool(workers) if workers > 1 else None
    if executor is None:
        _process_cells(config, store, pending, None, on_record, records)
        return records
    with executor:
        _process_cells(config, store, pending, executor, on_record, records)
    return records
