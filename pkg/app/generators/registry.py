"""Generator registry for dispatching by family name."""

from typing import Any

from app.errors import ParameterError
from app.generators.base import BaseGenerator, GeneratorSeed, ProblemFamily
from app.ising import IsingModel


class GeneratorRegistry:
    """Registry for managing problem generators."""

    def __init__(self) -> None:
        self._generators: dict[ProblemFamily, BaseGenerator] = {}

    def register(self, generator: BaseGenerator) -> None:
        """Register a generator.

        Args:
            generator: Generator instance to register.
        """
        self._generators[generator.family] = generator

    def get(self, family: ProblemFamily | str) -> BaseGenerator:
        """Get a generator by family.

        Raises:
            ParameterError: If the family is unknown.
        """
        try:
            key = ProblemFamily(family)
        except ValueError as e:
            raise ParameterError(f"Unknown problem family: {family}") from e
        generator = self._generators.get(key)
        if generator is None:
            raise ParameterError(f"No generator registered for family: {key.value}")
        return generator

    def list_generators(self) -> list[BaseGenerator]:
        """List all registered generators."""
        return list(self._generators.values())

    def get_family_names(self) -> list[str]:
        """Get all registered family names."""
        return [family.value for family in self._generators]

    def generate(
        self,
        family: ProblemFamily | str,
        n: int,
        seed: GeneratorSeed | None = None,
        **params: Any,
    ) -> IsingModel:
        """Generate an instance of ``family``.

        Args:
            family: Family tag.
            n: Spin count.
            seed: Realization seed (defaults to master seed 0, realization 0).
            **params: Family parameters.

        Returns:
            Generated model.
        """
        generator = self.get(family)
        generator.validate_n(n)
        return generator.generate(n, seed or GeneratorSeed(), **params)


# Global registry instance
registry = GeneratorRegistry()
