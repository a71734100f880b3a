"""Spin configurations and their integer labels."""

from collections.abc import Iterable, Sequence

import numpy as np
import numpy.typing as npt

from app.errors import ContractViolationError

SpinConfig = npt.NDArray[np.int8]


def as_spins(values: Sequence[int] | npt.ArrayLike, n: int | None = None) -> SpinConfig:
    """Convert values into a validated spin configuration.

    Args:
        values: Sequence of -1/+1 entries.
        n: Expected length (optional).

    Returns:
        Spin vector of dtype int8.

    Raises:
        ContractViolationError: If an entry is not exactly -1 or +1 or the length is wrong.
    """
    raw = np.asarray(values)
    if raw.ndim != 1:
        raise ContractViolationError(f"spin configuration must be one-dimensional, got {raw.shape}")
    if not np.all((raw == 1) | (raw == -1)):
        raise ContractViolationError("every spin must be exactly -1 or +1")
    if n is not None and raw.shape[0] != n:
        raise ContractViolationError(f"expected {n} spins, got {raw.shape[0]}")
    return raw.astype(np.int8)


def flip(s: SpinConfig, flips: Iterable[int]) -> SpinConfig:
    """Return a copy of ``s`` with the listed spins negated."""
    candidate = s.copy()
    index = np.fromiter(flips, dtype=np.intp)
    candidate[index] = -candidate[index]
    return candidate


def encode_state(s: SpinConfig) -> int:
    """Map spins to the integer whose binary digits are x_i = (s_i + 1) / 2.

    Spin 0 is the most significant bit, so all-down is 0 and all-up is 2**n - 1.
    """
    label = 0
    for spin in s:
        label = (label << 1) | (1 if spin > 0 else 0)
    return label


def decode_state(x: int, n: int) -> SpinConfig:
    """Inverse of :func:`encode_state`.

    Raises:
        ContractViolationError: If ``x`` is outside ``[0, 2**n)``.
    """
    if n < 1:
        raise ContractViolationError(f"spin count must be positive, got {n}")
    if not 0 <= x < (1 << n):
        raise ContractViolationError(f"label {x} out of range for n={n}")
    bits = (x >> np.arange(n - 1, -1, -1)) & 1
    return (2 * bits - 1).astype(np.int8)


def decode_labels(labels: npt.NDArray[np.int64], n: int) -> npt.NDArray[np.int8]:
    """Decode a batch of labels into a ``(len(labels), n)`` spin matrix."""
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (labels[:, None] >> shifts[None, :]) & 1
    return (2 * bits - 1).astype(np.int8)
