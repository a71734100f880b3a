"""Shared fixtures."""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from app.bench import BenchMethod, ExperimentConfig, ExperimentStore, FamilySpec, ResultRecord
from app.generators import FalseMinimumParams, ProblemFamily, gen_false_minimum
from app.ising import IsingModel


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def false_minimum_8() -> IsingModel:
    return gen_false_minimum(FalseMinimumParams(n=8, epsilon=0.1))


@pytest.fixture
def tiny_model() -> IsingModel:
    """n=2 with energies -1, 3, 1, -3 for labels 0..3."""
    return IsingModel(n=2, h=(1.0, 0.0), J=((0, 1, 1.0),))


@pytest.fixture
def store(tmp_path: Path) -> ExperimentStore:
    return ExperimentStore(tmp_path / "experiment")


@pytest.fixture
def small_config(tmp_path: Path) -> ExperimentConfig:
    """Zero-coupling n=4 sweep that runs in well under a second."""
    return ExperimentConfig(
        name="small",
        family=FamilySpec(name=ProblemFamily.ZERO_COUPLING),
        n_values=[4],
        methods=[BenchMethod.SA, BenchMethod.SAM, BenchMethod.BF],
        realizations=2,
        repetitions={4: 40},
        ratios=[1.0, 0.5],
        master_seed=7,
        output_dir=tmp_path / "experiment",
    )


@pytest.fixture
def make_record() -> Callable[..., ResultRecord]:
    """Build a ResultRecord from a success count, filling in derived fields."""

    def _make(
        method: BenchMethod,
        ratio: float,
        successes: int | None = None,
        repetitions: int = 10_000,
        n: int = 12,
        realization: int = 0,
        p_s: float | None = None,
        **overrides: Any,
    ) -> ResultRecord:
        steps = max(1, round(ratio * 2**n))
        if successes is not None:
            p_s = successes / repetitions
        assert p_s is not None
        data: dict[str, Any] = {
            "cell_id": f"gaussian_glass/n{n}/r{realization}/{method.value}/ratio{ratio:g}/K{steps}",
            "family": "gaussian_glass",
            "n": n,
            "method": method,
            "realization_index": realization,
            "ratio": ratio,
            "K": steps,
            "R": None if successes is None else repetitions,
            "successes": successes,
            "best_successes": successes,
            "g": 2,
            "p_s": p_s,
            "ci_low": p_s,
            "ci_high": p_s,
            "tts": 1.0,
            "tts_ci_low": 1.0,
            "tts_ci_high": 1.0,
        }
        data.update(overrides)
        return ResultRecord(**data)

    return _make
