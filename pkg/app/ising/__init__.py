"""Ising model module."""

from app.ising.io import dump_model, load_model, save_model
from app.ising.model import (
    Coupling,
    IsingModel,
    delta_energy,
    energy,
    flip_delta,
    initial_temperature,
)
from app.ising.spins import (
    SpinConfig,
    as_spins,
    decode_labels,
    decode_state,
    encode_state,
    flip,
)

__all__ = [
    "Coupling",
    "IsingModel",
    "SpinConfig",
    "as_spins",
    "decode_labels",
    "decode_state",
    "delta_energy",
    "dump_model",
    "encode_state",
    "energy",
    "flip",
    "flip_delta",
    "initial_temperature",
    "load_model",
    "save_model",
]
