"""Annealing run loop shared by SA, SAM and SAQ."""

import logging
from collections.abc import Callable, Collection
from pathlib import Path

import numpy as np
import numpy.typing as npt

from app.annealers.acceptance import accept_prob_boltzmann, accept_prob_quantum
from app.annealers.moves import draw_multi, draw_single, random_spins
from app.annealers.types import AnnealParams, Method, RunOutcome, Schedule, TraceStep
from app.config import settings
from app.errors import ContractViolationError
from app.ising import (
    IsingModel,
    SpinConfig,
    as_spins,
    encode_state,
    flip_delta,
    initial_temperature,
)

logger = logging.getLogger(__name__)

TraceCallback = Callable[[TraceStep], None]

_ENERGY_TOLERANCE = 1e-9


def _state_energy(
    h: npt.NDArray[np.float64], couplings: npt.NDArray[np.float64], s: SpinConfig
) -> float:
    spins = s.astype(np.float64)
    return float(-(h @ spins + spins @ couplings @ spins))


def anneal_run(
    model: IsingModel,
    params: AnnealParams,
    initial: SpinConfig | None = None,
    *,
    rng: np.random.Generator | None = None,
    trace: TraceCallback | None = None,
) -> RunOutcome:
    """Run one anneal of ``params.steps`` steps.

    At step k the temperature is T0 / k. A strictly downhill candidate is always
    accepted; otherwise SA and SAM accept with exp(-dE / T) and SAQ with
    exp(-d sqrt(dE / T)). One uniform acceptance draw is consumed every step,
    so SAM and SAQ sharing a stream see the same proposal sequence.

    Args:
        model: Problem instance.
        params: Method, step budget and optional T0 override.
        initial: Starting state; drawn uniformly from ``rng`` when omitted.
        rng: Run stream; built from ``params.seed`` when omitted.
        trace: Optional per-step callback.

    Returns:
        Final and best visited states with their energies.

    Raises:
        ContractViolationError: If ``initial`` does not match ``model.n``.
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    n = model.n
    s = random_spins(n, rng) if initial is None else as_spins(initial, n).copy()

    h = model.field_vector()
    couplings = model.coupling_matrix()
    t0 = params.t0_override if params.t0_override is not None else initial_temperature(model)
    schedule = Schedule(t0=t0, steps=params.steps)
    draw = draw_multi if params.method.multi_flip else draw_single
    tunneling = params.method is Method.SAQ
    check_every = settings.energy_check_interval if settings.debug else 0

    current = _state_energy(h, couplings, s)
    best_energy = current
    best_state = s.copy()
    accepted_moves = 0

    for k in range(1, params.steps + 1):
        temperature = schedule.temperature(k)
        flips = draw(n, rng)
        delta = flip_delta(h, couplings, s, flips)
        u = rng.random()

        if delta < 0:
            accepted = True
        elif tunneling:
            accepted = u < accept_prob_quantum(delta, temperature, flips.size)
        else:
            accepted = u < accept_prob_boltzmann(delta, temperature)

        if accepted:
            s[flips] = -s[flips]
            current += delta
            accepted_moves += 1
            if current < best_energy:
                best_energy = current
                best_state = s.copy()

        if trace is not None:
            trace(
                TraceStep(
                    k=k,
                    temperature=temperature,
                    flips=[int(i) for i in flips],
                    delta_e=delta,
                    accepted=accepted,
                )
            )

        if check_every and k % check_every == 0:
            recomputed = _state_energy(h, couplings, s)
            logger.debug(f"step {k}: tracked energy {current}, recomputed {recomputed}")
            if abs(recomputed - current) > _ENERGY_TOLERANCE:
                raise ContractViolationError(
                    f"energy bookkeeping drifted at step {k}: {current} != {recomputed}"
                )

    return RunOutcome(
        final_state=tuple(int(v) for v in s),
        final_energy=current,
        best_state=tuple(int(v) for v in best_state),
        best_energy=best_energy,
        accepted_moves=accepted_moves,
        steps=params.steps,
    )


def mark_success(outcome: RunOutcome, minima: Collection[int]) -> RunOutcome:
    """Set ``success`` (final state) and ``best_success`` against global-minimum labels."""
    final_label = encode_state(np.asarray(outcome.final_state, dtype=np.int8))
    best_label = encode_state(np.asarray(outcome.best_state, dtype=np.int8))
    return outcome.model_copy(
        update={"success": final_label in minima, "best_success": best_label in minima}
    )


class TraceWriter:
    """Collects trace steps and writes them as JSON lines."""

    def __init__(self) -> None:
        self.steps: list[TraceStep] = []

    def __call__(self, step: TraceStep) -> None:
        self.steps.append(step)

    def write(self, path: Path) -> Path:
        """Write one JSON object per step to ``path``."""
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            for step in self.steps:
                f.write(step.model_dump_json() + "\n")
        return path
