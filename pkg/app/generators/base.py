"""Base generator class for all problem families."""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any

from pydantic import BaseModel, Field

from app.errors import ParameterError
from app.ising import IsingModel


class ProblemFamily(str, Enum):
    """Problem family tag."""

    FALSE_MINIMUM = "false_minimum"
    ZERO_COUPLING = "zero_coupling"
    UNIFORM_GLASS = "uniform_glass"
    GAUSSIAN_GLASS = "gaussian_glass"

    @property
    def code(self) -> int:
        """Stable integer used in random stream derivation."""
        return _FAMILY_CODES[self]


_FAMILY_CODES = {
    ProblemFamily.FALSE_MINIMUM: 1,
    ProblemFamily.ZERO_COUPLING: 2,
    ProblemFamily.UNIFORM_GLASS: 3,
    ProblemFamily.GAUSSIAN_GLASS: 4,
}


class GeneratorSeed(BaseModel):
    """Identifies one random realization of a family."""

    master_seed: int = Field(default=0, ge=0, lt=2**64)
    realization_index: int = Field(default=0, ge=0)


class BaseGenerator(ABC):
    """Abstract base class for all problem generators."""

    @property
    @abstractmethod
    def family(self) -> ProblemFamily:
        """Family produced by this generator."""
        ...

    @property
    @abstractmethod
    def description(self) -> str:
        """Human-readable family description."""
        ...

    @property
    def min_spins(self) -> int:
        """Smallest supported spin count."""
        return 1

    @property
    def deterministic(self) -> bool:
        """True when the instance does not depend on the seed."""
        return False

    def validate_n(self, n: int) -> None:
        """Check a spin count against the family constraints.

        Raises:
            ParameterError: If the family cannot be built with ``n`` spins.
        """
        if n < self.min_spins:
            raise ParameterError(f"{self.family.value} needs n >= {self.min_spins}, got {n}")

    @abstractmethod
    def generate(self, n: int, seed: GeneratorSeed, **params: Any) -> IsingModel:
        """Build one instance.

        Args:
            n: Spin count.
            seed: Realization seed.
            **params: Family parameters.

        Returns:
            Generated model.
        """
        ...
