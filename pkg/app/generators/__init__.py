"""Problem generators module."""

from app.generators.base import BaseGenerator, GeneratorSeed, ProblemFamily
from app.generators.families import (
    FalseMinimumGenerator,
    FalseMinimumParams,
    GaussianGlassGenerator,
    UniformGlassGenerator,
    ZeroCouplingGenerator,
    false_minimum_couplings,
    gen_false_minimum,
    gen_gaussian_spin_glass,
    gen_uniform_spin_glass,
    gen_zero_coupling,
)
from app.generators.registry import GeneratorRegistry, registry

# Register all generators
registry.register(FalseMinimumGenerator())
registry.register(ZeroCouplingGenerator())
registry.register(UniformGlassGenerator())
registry.register(GaussianGlassGenerator())

__all__ = [
    "BaseGenerator",
    "FalseMinimumGenerator",
    "FalseMinimumParams",
    "GaussianGlassGenerator",
    "GeneratorRegistry",
    "GeneratorSeed",
    "ProblemFamily",
    "UniformGlassGenerator",
    "ZeroCouplingGenerator",
    "false_minimum_couplings",
    "gen_false_minimum",
    "gen_gaussian_spin_glass",
    "gen_uniform_spin_glass",
    "gen_zero_coupling",
    "registry",
]
