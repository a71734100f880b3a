"""The four benchmark families: false minimum, zero coupling and two spin glasses."""

import itertools
from typing import Any

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator

from app.errors import ParameterError
from app.generators.base import BaseGenerator, GeneratorSeed, ProblemFamily
from app.ising import Coupling, IsingModel
from app.streams import problem_rng


class FalseMinimumParams(BaseModel):
    """Parameters of the weak-strong cluster instance."""

    n: int = Field(..., ge=4)
    epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)

    @field_validator("n")
    @classmethod
    def _multiple_of_four(cls, value: int) -> int:
        if value % 4 != 0:
            raise ValueError(f"n must be a multiple of 4, got {value}")
        return value


def false_minimum_couplings(n: int) -> list[Coupling]:
    """Ferromagnetic bonds within each half plus the n/2 rungs joining them.

    Spins ``0 .. n/2-1`` form the weak cluster and ``n/2 .. n-1`` the strong
    cluster; rung ``(i, i + n/2)`` ties weak spin ``i`` to its strong partner.
    """
    half = n // 2
    pairs = set(itertools.combinations(range(half), 2))
    pairs |= set(itertools.combinations(range(half, n), 2))
    pairs |= {(i, i + half) for i in range(half)}
    return [(i, j, 1.0) for i, j in sorted(pairs)]


def gen_false_minimum(params: FalseMinimumParams) -> IsingModel:
    """Deterministic instance with the global minimum at all-down and a false one at all-up.

    Weak spins carry ``h = 1 - epsilon``, strong spins ``h = -1``; the gap
    between the two aligned states is ``n * epsilon``.
    """
    half = params.n // 2
    fields = [1.0 - params.epsilon] * half + [-1.0] * half
    return IsingModel(
        n=params.n,
        h=tuple(fields),
        J=tuple(false_minimum_couplings(params.n)),
        family=ProblemFamily.FALSE_MINIMUM.value,
        seed=0,
        params={"epsilon": params.epsilon},
    )


def _random_signs(rng: np.random.Generator, size: int) -> list[float]:
    return [float(v) for v in 2 * rng.integers(0, 2, size=size) - 1]


def _glass_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def gen_zero_coupling(n: int, seed: GeneratorSeed) -> IsingModel:
    """Uncoupled spins with fields drawn as +1 or -1 with equal probability."""
    family = ProblemFamily.ZERO_COUPLING
    rng = problem_rng(seed.master_seed, family.code, n, seed.realization_index)
    return IsingModel(
        n=n,
        h=tuple(_random_signs(rng, n)),
        family=family.value,
        seed=seed.master_seed,
        params={"realization": seed.realization_index},
    )


def gen_uniform_spin_glass(n: int, seed: GeneratorSeed) -> IsingModel:
    """Fully connected glass, h = 0, every J_ij = +1 or -1 with equal probability."""
    family = ProblemFamily.UNIFORM_GLASS
    rng = problem_rng(seed.master_seed, family.code, n, seed.realization_index)
    pairs = _glass_pairs(n)
    values = _random_signs(rng, len(pairs))
    return IsingModel(
        n=n,
        h=(0.0,) * n,
        J=tuple((i, j, v) for (i, j), v in zip(pairs, values, strict=True)),
        family=family.value,
        seed=seed.master_seed,
        params={"realization": seed.realization_index},
    )


def gen_gaussian_spin_glass(n: int, seed: GeneratorSeed) -> IsingModel:
    """Fully connected glass, h = 0, J_ij standard normal.

    Couplings come from ``Generator.standard_normal`` (ziggurat sampler) in
    pair order ``(0, 1), (0, 2), ...``, which fixes serialized instances.
    """
    family = ProblemFamily.GAUSSIAN_GLASS
    rng = problem_rng(seed.master_seed, family.code, n, seed.realization_index)
    pairs = _glass_pairs(n)
    values = rng.standard_normal(len(pairs))
    return IsingModel(
        n=n,
        h=(0.0,) * n,
        J=tuple((i, j, float(v)) for (i, j), v in zip(pairs, values, strict=True)),
        family=family.value,
        seed=seed.master_seed,
        params={"realization": seed.realization_index},
    )


class FalseMinimumGenerator(BaseGenerator):
    """Generator for the weak-strong cluster problem."""

    @property
    def family(self) -> ProblemFamily:
        return ProblemFamily.FALSE_MINIMUM

    @property
    def description(self) -> str:
        return "Weak-strong clusters: global minimum all-down, false minimum all-up"

    @property
    def min_spins(self) -> int:
        return 4

    @property
    def deterministic(self) -> bool:
        return True

    def validate_n(self, n: int) -> None:
        super().validate_n(n)
        if n % 4 != 0:
            raise ParameterError(f"false_minimum needs n to be a multiple of 4, got {n}")

    def generate(self, n: int, seed: GeneratorSeed, **params: Any) -> IsingModel:
        try:
            family_params = FalseMinimumParams(n=n, epsilon=params.get("epsilon", 0.1))
        except ValidationError as e:
            raise ParameterError(str(e)) from e
        return gen_false_minimum(family_params)


class ZeroCouplingGenerator(BaseGenerator):
    """Generator for the uncoupled random-field problem."""

    @property
    def family(self) -> ProblemFamily:
        return ProblemFamily.ZERO_COUPLING

    @property
    def description(self) -> str:
        return "No couplings, fields +1/-1 with equal probability"

    def generate(self, n: int, seed: GeneratorSeed, **params: Any) -> IsingModel:
        return gen_zero_coupling(n, seed)


class UniformGlassGenerator(BaseGenerator):
    """Generator for the fully connected +-1 spin glass."""

    @property
    def family(self) -> ProblemFamily:
        return ProblemFamily.UNIFORM_GLASS

    @property
    def description(self) -> str:
        return "Fully connected spin glass, h = 0, J = +1/-1"

    @property
    def min_spins(self) -> int:
        return 2

    def generate(self, n: int, seed: GeneratorSeed, **params: Any) -> IsingModel:
        return gen_uniform_spin_glass(n, seed)


class GaussianGlassGenerator(BaseGenerator):
    """Generator for the fully connected Gaussian spin glass."""

    @property
    def family(self) -> ProblemFamily:
        return ProblemFamily.GAUSSIAN_GLASS

    @property
    def description(self) -> str:
        return "Fully connected spin glass, h = 0, J standard normal"

    @property
    def min_spins(self) -> int:
        return 2

    def generate(self, n: int, seed: GeneratorSeed, **params: Any) -> IsingModel:
        return gen_gaussian_spin_glass(n, seed)
