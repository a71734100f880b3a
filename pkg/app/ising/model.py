"""Ising problem instances and their energy function.

The energy of a configuration is

    E(s) = -(sum_i h_i s_i + sum_i sum_j J_ij s_i s_j)

where the double sum runs over all ordered pairs. Couplings are stored once as
upper-triangular ``(i, j, value)`` triples with ``i < j``, so every stored bond
contributes twice. Indices are 0-based everywhere, including the problem file.
"""

from collections.abc import Collection
from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import ContractViolationError
from app.ising.spins import SpinConfig

Coupling = tuple[int, int, float]


class IsingModel(BaseModel):
    """Immutable Ising problem instance."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of spins")
    h: tuple[float, ...] = Field(..., description="Local fields, length n")
    J: tuple[Coupling, ...] = Field(default=(), description="Couplings (i, j, value), i < j")
    family: str = Field(default="custom", description="Problem family tag")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Generator master seed")
    params: dict[str, Any] = Field(default_factory=dict, description="Family parameters")

    @model_validator(mode="after")
    def _check_structure(self) -> "IsingModel":
        if len(self.h) != self.n:
            raise ValueError(f"h has length {len(self.h)}, expected {self.n}")
        seen: set[tuple[int, int]] = set()
        for i, j, _ in self.J:
            if not 0 <= i < j < self.n:
                raise ValueError(f"coupling ({i}, {j}) must satisfy 0 <= i < j < {self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate coupling ({i}, {j})")
            seen.add((i, j))
        return self

    @property
    def num_states(self) -> int:
        """Size N = 2**n of the state space."""
        return 1 << self.n

    @property
    def is_integer(self) -> bool:
        """True when every field and coupling is an integer."""
        values = [*self.h, *(value for _, _, value in self.J)]
        return all(float(v).is_integer() for v in values)

    def field_vector(self) -> npt.NDArray[np.float64]:
        """Local fields as a float vector."""
        return np.asarray(self.h, dtype=np.float64)

    def coupling_matrix(self) -> npt.NDArray[np.float64]:
        """Dense symmetric coupling matrix with zero diagonal."""
        matrix = np.zeros((self.n, self.n), dtype=np.float64)
        if self.J:
            rows, cols, values = zip(*self.J, strict=True)
            matrix[rows, cols] = values
            matrix[cols, rows] = values
        return matrix


def _check_length(model: IsingModel, s: SpinConfig) -> None:
    if s.shape != (model.n,):
        raise ContractViolationError(f"state has shape {s.shape}, model has n={model.n}")


def energy(model: IsingModel, s: SpinConfig) -> float:
    """Evaluate the Ising energy of ``s``.

    Raises:
        ContractViolationError: If ``s`` does not have ``model.n`` spins.
    """
    _check_length(model, s)
    spins = s.astype(np.float64)
    couplings = model.coupling_matrix()
    return float(-(model.field_vector() @ spins + spins @ couplings @ spins))


def flip_delta(
    h: npt.NDArray[np.float64],
    couplings: npt.NDArray[np.float64],
    s: SpinConfig,
    flips: npt.NDArray[np.intp],
) -> float:
    """Energy change from negating ``flips`` in ``s``, without validation.

    Only bonds crossing the flipped set change sign, so the difference is
    ``2 sum_F h_i s_i + 4 sum_{i in F, j not in F} J_ij s_i s_j``.
    """
    flipped = s[flips].astype(np.float64)
    total_field = couplings[flips] @ s
    internal = couplings[np.ix_(flips, flips)] @ flipped
    return float(2.0 * (h[flips] @ flipped) + 4.0 * (flipped @ (total_field - internal)))


def delta_energy(model: IsingModel, s: SpinConfig, flips: Collection[int]) -> float:
    """Energy difference E(s') - E(s) where s' negates the spins in ``flips``.

    Raises:
        ContractViolationError: On an empty, duplicated or out-of-range flip set.
    """
    _check_length(model, s)
    index = np.fromiter(flips, dtype=np.intp)
    if index.size == 0:
        raise ContractViolationError("flip set must be nonempty")
    if np.unique(index).size != index.size:
        raise ContractViolationError(f"flip set has duplicate indices: {sorted(flips)}")
    if index.min() < 0 or index.max() >= model.n:
        raise ContractViolationError(f"flip index out of range for n={model.n}")
    return flip_delta(model.field_vector(), model.coupling_matrix(), s, index)


def initial_temperature(model: IsingModel) -> float:
    """Upper bound T0 = sum |h_i| + sum_ij |J_ij| on |E(s)| over all states."""
    field_total = float(np.abs(model.field_vector()).sum())
    coupling_total = sum(abs(value) for _, _, value in model.J)
    return field_total + 2.0 * coupling_total
