"""Exhaustive enumeration of the state space."""

import logging
from collections import Counter
from collections.abc import Iterator
from pathlib import Path

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field, computed_field, field_validator

from app.config import settings
from app.errors import CapacityError, MissingInputError
from app.ising import IsingModel, decode_labels

logger = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-12


class MinimaSet(BaseModel):
    """Global-minimum labels of one model."""

    n: int = Field(..., ge=1)
    min_energy: float
    minima: list[int] = Field(..., min_length=1)

    @field_validator("minima")
    @classmethod
    def _sorted(cls, value: list[int]) -> list[int]:
        return sorted(value)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def g(self) -> int:
        """Degeneracy of the ground state."""
        return len(self.minima)

    def is_complement_closed(self) -> bool:
        """True when the set is invariant under global spin negation."""
        top = (1 << self.n) - 1
        members = set(self.minima)
        return all(top - label in members for label in members)


class LocalMinimum(BaseModel):
    """A strict single-flip local minimum."""

    label: int
    energy: float


class EnergyHistogram(BaseModel):
    """Number of states at each distinct energy, in ascending energy order."""

    levels: list[float]
    counts: list[int]
    integer: bool

    @property
    def total(self) -> int:
        """Number of enumerated states."""
        return sum(self.counts)

    def gaps(self) -> list[float]:
        """Differences between neighboring energy levels."""
        return [float(b - a) for a, b in zip(self.levels, self.levels[1:])]

    @property
    def smallest_gap(self) -> float | None:
        """Smallest neighboring-level gap, or None for a single level."""
        gaps = self.gaps()
        return min(gaps) if gaps else None

    def as_dict(self) -> dict[float, int]:
        """Energy level to count mapping."""
        return dict(zip(self.levels, self.counts, strict=True))


def _check_capacity(model: IsingModel, cap: int | None) -> None:
    limit = settings.oracle_max_spins if cap is None else cap
    if model.n > limit:
        raise CapacityError(f"refusing to enumerate 2**{model.n} states (cap is n <= {limit})")


def iter_energies(
    model: IsingModel, cap: int | None = None
) -> Iterator[tuple[npt.NDArray[np.int64], npt.NDArray[np.float64]]]:
    """Yield ``(labels, energies)`` chunks covering every state in label order.

    Raises:
        CapacityError: If ``model.n`` exceeds the enumeration cap.
    """
    _check_capacity(model, cap)
    h = model.field_vector()
    couplings = model.coupling_matrix()
    chunk = 1 << min(settings.oracle_chunk_bits, model.n)
    for start in range(0, model.num_states, chunk):
        labels = np.arange(start, start + chunk, dtype=np.int64)
        spins = decode_labels(labels, model.n).astype(np.float64)
        energies = -(spins @ h + np.einsum("ij,ij->i", spins @ couplings, spins))
        yield labels, energies


def _within(energy: float, reference: float) -> bool:
    return abs(energy - reference) <= RELATIVE_TOLERANCE * max(1.0, abs(reference))


def brute_force_minima(model: IsingModel, cap: int | None = None) -> MinimaSet:
    """Exact global-minima set by enumerating all 2**n states.

    Args:
        model: Problem instance.
        cap: Largest n to enumerate (defaults to ``settings.oracle_max_spins``).

    Returns:
        Minimum energy and every label attaining it.
    """
    best = np.inf
    candidates: list[tuple[int, float]] = []
    for labels, energies in iter_energies(model, cap):
        chunk_min = float(energies.min())
        if chunk_min < best:
            best = chunk_min
            candidates = [(lbl, e) for lbl, e in candidates if _within(e, best)]
        mask = np.abs(energies - best) <= RELATIVE_TOLERANCE * max(1.0, abs(best))
        candidates.extend(zip(labels[mask].tolist(), energies[mask].tolist(), strict=True))
    min_energy = min(e for _, e in candidates)
    minima = [lbl for lbl, e in candidates if _within(e, min_energy)]
    logger.debug(f"n={model.n}: minimum {min_energy} with degeneracy {len(minima)}")
    return MinimaSet(n=model.n, min_energy=min_energy, minima=minima)


def energy_histogram(model: IsingModel, cap: int | None = None) -> EnergyHistogram:
    """Exact count of states at each energy value."""
    counts: Counter[float] = Counter()
    for _, energies in iter_energies(model, cap):
        levels, level_counts = np.unique(energies, return_counts=True)
        counts.update(dict(zip(levels.tolist(), level_counts.tolist(), strict=True)))
    ordered = sorted(counts)
    return EnergyHistogram(
        levels=ordered,
        counts=[counts[level] for level in ordered],
        integer=model.is_integer,
    )


def local_minima(model: IsingModel, cap: int | None = None) -> list[LocalMinimum]:
    """All states whose every single-flip neighbor has strictly higher energy."""
    h = model.field_vector()
    couplings = model.coupling_matrix()
    found: list[LocalMinimum] = []
    for labels, energies in iter_energies(model, cap):
        spins = decode_labels(labels, model.n).astype(np.float64)
        deltas = spins * (2.0 * h + 4.0 * (spins @ couplings))
        mask = np.all(deltas > 0, axis=1)
        found.extend(
            LocalMinimum(label=int(lbl), energy=float(e))
            for lbl, e in zip(labels[mask], energies[mask], strict=True)
        )
    return sorted(found, key=lambda m: (m.energy, m.label))


def save_minima(minima: MinimaSet, path: Path) -> Path:
    """Write a minima cache file next to its problem file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(minima.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def load_minima(path: Path) -> MinimaSet:
    """Read a minima cache file.

    Raises:
        MissingInputError: If the file does not exist.
    """
    if not path.exists():
        raise MissingInputError(f"minima file not found: {path}")
    return MinimaSet.model_validate_json(path.read_text(encoding="utf-8"))
