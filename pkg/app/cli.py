"""Command-line entry point: ``ising-bench``."""

import logging
import math
import sys
from pathlib import Path
from typing import Annotated

import click
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from app.annealers import AnnealParams, Method, TraceWriter, anneal_run, mark_success
from app.bench import (
    BenchMethod,
    ExperimentConfig,
    ExperimentStore,
    ReportMode,
    cmd_crossover,
    cmd_generate,
    cmd_report,
    cmd_run,
    load_config,
)
from app.config import settings
from app.errors import IsingBenchError
from app.ising import load_model
from app.oracle import brute_force_minima, energy_histogram, load_minima, local_minima, save_minima

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="ising-bench",
    help="Simulated annealing benchmark on small Ising problems.",
    no_args_is_help=True,
    add_completion=False,
)
console = Console()

DEFAULT_ALPHA = 0.05

ConfigOption = Annotated[
    Path | None, typer.Option("--config", "-c", help="Experiment config (JSON).")
]
SeedOption = Annotated[
    int | None, typer.Option("--seed", help="Master seed override (unsigned 64-bit).")
]
OutOption = Annotated[
    Path | None, typer.Option("--out", "-o", help="Experiment directory override.")
]


@app.callback()
def _configure(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging."),
) -> None:
    logging.getLogger().setLevel(logging.DEBUG if verbose else settings.log_level.upper())


def _experiment(
    config_path: Path | None, seed: int | None, out: Path | None
) -> tuple[ExperimentConfig, ExperimentStore]:
    if config_path is None:
        raise typer.BadParameter("--config is required", param_hint="--config")
    config = load_config(config_path)
    update: dict[str, object] = {}
    if seed is not None:
        if not 0 <= seed < 2**64:
            raise typer.BadParameter("must be an unsigned 64-bit integer", param_hint="--seed")
        update["master_seed"] = seed
    if out is not None:
        update["output_dir"] = out
    config = config.model_copy(update=update)
    return config, ExperimentStore(config.output_dir)


def _store(config_path: Path | None, out: Path | None) -> tuple[ExperimentStore, float]:
    """Resolve the experiment directory and the config's CI significance."""
    experiment = load_config(config_path) if config_path is not None else None
    alpha = experiment.alpha if experiment is not None else DEFAULT_ALPHA
    if out is not None:
        return ExperimentStore(out), alpha
    if experiment is not None:
        return ExperimentStore(experiment.output_dir), alpha
    return ExperimentStore(settings.output_dir), alpha


def _check_alpha(value: float | None) -> float | None:
    if value is not None and not 0.0 < value < 1.0:
        raise typer.BadParameter("must lie strictly between 0 and 1")
    return value


def _fmt(value: float | None) -> str:
    if value is None:
        return "-"
    return "inf" if math.isinf(value) else f"{value:.4g}"


@app.command()
def generate(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
) -> None:
    """Write problem files and their brute-force minima."""
    experiment, store = _experiment(config, seed, out)
    minima_sets = cmd_generate(experiment, store)

    table = Table(title=f"{experiment.name}: {experiment.family.name.value}")
    table.add_column("n", justify="right")
    table.add_column("realization", justify="right")
    table.add_column("E_min", justify="right")
    table.add_column("g", justify="right")
    index = 0
    for n in experiment.n_values:
        for realization in range(experiment.realization_count):
            minima = minima_sets[index]
            table.add_row(str(n), str(realization), f"{minima.min_energy:g}", str(minima.g))
            index += 1
    console.print(table)


@app.command()
def run(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
    workers: int | None = typer.Option(None, "--workers", "-w", min=1, help="Worker processes."),
    resume: bool = typer.Option(False, "--resume", help="Skip cells already recorded."),
) -> None:
    """Run every cell of an experiment."""
    experiment, store = _experiment(config, seed, out)
    records = cmd_run(experiment, store, workers=workers, resume=resume)

    table = Table(title=f"{len(records)} cells -> {store.results_path}")
    for column in ("n", "r", "method", "K/N", "K", "p_s", "CI", "TTS"):
        table.add_column(column, justify="right")
    for record in records:
        table.add_row(
            str(record.n),
            str(record.realization_index),
            record.method.value,
            f"{record.ratio:g}",
            str(record.K),
            _fmt(record.p_s),
            f"[{_fmt(record.ci_low)}, {_fmt(record.ci_high)}]",
            _fmt(record.tts),
        )
    console.print(table)


@app.command()
def report(
    mode: ReportMode = typer.Argument(..., help="Report layout."),
    config: ConfigOption = None,
    out: OutOption = None,
    alpha: float | None = typer.Option(
        None, "--alpha", callback=_check_alpha, help="CI significance (default: from config)."
    ),
) -> None:
    """Export plot data from recorded results."""
    store, config_alpha = _store(config, out)
    path = cmd_report(store.load_records(), mode, store, config_alpha if alpha is None else alpha)
    console.print(f"[green]wrote[/green] {path}")


@app.command()
def crossover(
    config: ConfigOption = None,
    out: OutOption = None,
    method_a: BenchMethod = typer.Option(BenchMethod.SA, "--method-a"),
    method_b: BenchMethod = typer.Option(BenchMethod.SAM, "--method-b"),
) -> None:
    """Locate the K/N where two success curves cross."""
    store, alpha = _store(config, out)
    summaries, path = cmd_crossover(store.load_records(), store, method_a, method_b, alpha)

    table = Table(title=f"{method_a.value} vs {method_b.value}")
    for column in ("n", "status", "interval", "estimate", "CIs overlap"):
        table.add_column(column)
    for summary in summaries:
        if not summary.crossings:
            table.add_row(str(summary.n), summary.status, "-", "-", "-")
        for crossing in summary.crossings:
            table.add_row(
                str(summary.n),
                summary.status,
                f"[{crossing.ratio_low:g}, {crossing.ratio_high:g}]",
                f"{crossing.ratio_estimate:.4g}",
                "yes" if crossing.ci_overlap else "no",
            )
    console.print(table)
    console.print(f"[green]wrote[/green] {path}")


def _minima_path_for(problem: Path) -> Path:
    name = problem.name.removesuffix(".problem.json").removesuffix(".json")
    return problem.with_name(f"{name}.minima.json")


@app.command()
def oracle(
    problems: list[Path] = typer.Argument(..., help="Problem files."),
    write_minima: bool = typer.Option(False, "--write-minima", help="(Re)write minima caches."),
    show_local: bool = typer.Option(False, "--local-minima", help="Count local minima."),
) -> None:
    """Enumerate ground states and the energy spectrum of problem files."""
    table = Table(title="Brute-force oracle")
    for column in ("problem", "n", "E_min", "g", "levels", "smallest gap", "local minima"):
        table.add_column(column)
    for problem in problems:
        model = load_model(problem)
        minima = brute_force_minima(model)
        histogram = energy_histogram(model)
        local = str(len(local_minima(model))) if show_local else "-"
        table.add_row(
            problem.name,
            str(model.n),
            f"{minima.min_energy:g}",
            str(minima.g),
            str(len(histogram.levels)),
            _fmt(histogram.smallest_gap),
            local,
        )
        if write_minima:
            save_minima(minima, _minima_path_for(problem))
    console.print(table)


@app.command()
def anneal(
    problem: Path = typer.Argument(..., help="Problem file."),
    method: Method = typer.Option(Method.SA, "--method", "-m"),
    steps: int = typer.Option(..., "--steps", "-k", min=1, help="Annealing steps K."),
    seed: int = typer.Option(0, "--seed", min=0, help="Run seed."),
    t0: float | None = typer.Option(None, "--t0", min=0.0, help="Initial temperature override."),
    trace: Path | None = typer.Option(None, "--trace", help="Write per-step trace (JSON lines)."),
    minima: Path | None = typer.Option(None, "--minima", help="Minima file to mark success."),
) -> None:
    """Run a single anneal on a problem file."""
    model = load_model(problem)
    writer = TraceWriter() if trace is not None else None
    params = AnnealParams(method=method, steps=steps, t0_override=t0, seed=seed)
    outcome = anneal_run(model, params, trace=writer)
    if minima is not None:
        outcome = mark_success(outcome, set(load_minima(minima).minima))

    table = Table(title=f"{method.value}, K={steps}")
    table.add_column("field")
    table.add_column("value", justify="right")
    table.add_row("final energy", f"{outcome.final_energy:g}")
    table.add_row("best energy", f"{outcome.best_energy:g}")
    table.add_row("accepted moves", str(outcome.accepted_moves))
    if outcome.success is not None:
        table.add_row("success", str(outcome.success))
        table.add_row("best success", str(outcome.best_success))
    console.print(table)
    if writer is not None and trace is not None:
        writer.write(trace)
        console.print(f"[green]wrote[/green] {trace}")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and map failures to exit codes (1 usage, 2 runtime)."""
    try:
        result = app(args=argv, prog_name="ising-bench", standalone_mode=False)
    except (click.ClickException, typer.BadParameter) as e:
        # typer releases that vendor click raise their own exception classes
        e.show()
        return 1
    except (click.exceptions.Abort, typer.Abort):
        return 1
    except ValidationError as e:
        console.print(f"[red]invalid configuration:[/red] {e}")
        return 1
    except (IsingBenchError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        console.print(f"[red]error:[/red] {e}")
        return 2
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
