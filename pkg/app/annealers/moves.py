"""Candidate proposals and the Hamming distance between configurations."""

import numpy as np
import numpy.typing as npt

from app.errors import ContractViolationError
from app.ising import SpinConfig

Flips = npt.NDArray[np.intp]


def random_spins(n: int, rng: np.random.Generator) -> SpinConfig:
    """Uniformly random configuration of ``n`` spins."""
    return (2 * rng.integers(0, 2, size=n) - 1).astype(np.int8)


def draw_single(n: int, rng: np.random.Generator) -> Flips:
    """One index chosen uniformly from ``0..n-1``."""
    return np.array([rng.integers(n)], dtype=np.intp)


def draw_multi(n: int, rng: np.random.Generator) -> Flips:
    """Draw m uniformly from 1..n, then a uniform m-subset of distinct indices."""
    m = int(rng.integers(1, n + 1))
    return rng.choice(n, size=m, replace=False).astype(np.intp)


def _apply(s: SpinConfig, flips: Flips) -> SpinConfig:
    candidate = s.copy()
    candidate[flips] = -candidate[flips]
    return candidate


def propose_single(s: SpinConfig, rng: np.random.Generator) -> tuple[SpinConfig, Flips]:
    """Flip one spin chosen at random."""
    flips = draw_single(s.shape[0], rng)
    return _apply(s, flips), flips


def propose_multi(s: SpinConfig, rng: np.random.Generator) -> tuple[SpinConfig, Flips]:
    """Flip a uniformly sized, uniformly chosen set of distinct spins."""
    flips = draw_multi(s.shape[0], rng)
    return _apply(s, flips), flips


def hamming_distance(a: SpinConfig, b: SpinConfig) -> int:
    """Number of positions in which ``a`` and ``b`` differ.

    Raises:
        ContractViolationError: If the lengths differ.
    """
    if a.shape != b.shape:
        raise ContractViolationError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))
