"""Deterministic random streams derived from integer indices.

Every stream is a PCG64 generator seeded by ``SeedSequence(master_seed,
spawn_key=...)``. The spawn key starts with a namespace so problem streams and
run streams never collide, followed by the indices that identify the draw.
Because a stream depends only on its indices, realization ``r`` or repetition
``k`` can be produced without generating any of its predecessors, and results
do not depend on execution order or worker count.
"""

import numpy as np

PROBLEM_NAMESPACE = 0
RUN_NAMESPACE = 1

_U64 = 2**64


def derive_rng(master_seed: int, *keys: int) -> np.random.Generator:
    """Create a generator for the stream identified by ``keys``.

    Args:
        master_seed: Unsigned 64-bit experiment seed.
        *keys: Non-negative integer indices (namespace first).

    Returns:
        Independent PCG64 generator.
    """
    if not 0 <= master_seed < _U64:
        raise ValueError(f"master_seed must be an unsigned 64-bit integer, got {master_seed}")
    if any(key < 0 for key in keys):
        raise ValueError(f"stream keys must be non-negative, got {keys}")
    sequence = np.random.SeedSequence(master_seed, spawn_key=tuple(int(key) for key in keys))
    return np.random.Generator(np.random.PCG64(sequence))


def problem_rng(
    master_seed: int, family_code: int, n: int, realization: int
) -> np.random.Generator:
    """Stream used to draw one problem realization."""
    return derive_rng(master_seed, PROBLEM_NAMESPACE, family_code, n, realization)


def run_rng(
    master_seed: int,
    family_code: int,
    n: int,
    realization: int,
    method_code: int,
    steps: int,
    repetition: int,
) -> np.random.Generator:
    """Stream owned by a single anneal repetition."""
    return derive_rng(
        master_seed,
        RUN_NAMESPACE,
        family_code,
        n,
        realization,
        method_code,
        steps,
        repetition,
    )
