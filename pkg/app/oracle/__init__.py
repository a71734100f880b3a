"""Brute-force oracle module."""

from app.oracle.brute_force import bf_success_probability, sample_bf_success
from app.oracle.minima import (
    EnergyHistogram,
    LocalMinimum,
    MinimaSet,
    brute_force_minima,
    energy_histogram,
    iter_energies,
    load_minima,
    local_minima,
    save_minima,
)

__all__ = [
    "EnergyHistogram",
    "LocalMinimum",
    "MinimaSet",
    "bf_success_probability",
    "brute_force_minima",
    "energy_histogram",
    "iter_energies",
    "load_minima",
    "local_minima",
    "sample_bf_success",
    "save_minima",
]
