"""Seed-to-stream derivation.

Every random draw in the package goes through `derive_rng`, keyed by a seed,
a purpose tag and optional counters. Purpose codes are fixed integers, so a
new purpose never shifts the streams of existing ones.
"""

import numpy as np

PURPOSES: dict[str, int] = {
    "matrix": 1,
    "rows": 2,
    "frequencies": 3,
    "generator": 4,
    "signs": 5,
    "points": 6,
    "supports": 7,
    "tail": 8,
    "trial-matrix": 9,
    "trial-signs": 10,
    "trial-data": 11,
    "instances": 12,
    "power-start": 13,
}

SEED_MASK = (1 << 64) - 1


def _seed_sequence(seed: int, purpose: str, counters: tuple[int, ...]) -> np.random.SeedSequence:
    if purpose not in PURPOSES:
        raise KeyError(f"Unknown seed purpose: {purpose}")
    return np.random.SeedSequence(
        entropy=int(seed) & SEED_MASK,
        spawn_key=(PURPOSES[purpose], *(int(c) for c in counters)),
    )


def derive_rng(seed: int, purpose: str, *counters: int) -> np.random.Generator:
    """
    Build an independent generator for (seed, purpose, counters).

    Args:
        seed: 64-bit user seed
        purpose: Purpose tag, one of PURPOSES
        counters: Extra integer keys (trial index, instance index, ...)

    Returns:
        numpy Generator
    """
    return np.random.default_rng(_seed_sequence(seed, purpose, counters))


def derive_seed(seed: int, purpose: str, *counters: int) -> int:
    """Derive a 64-bit child seed; order of derivation does not matter."""
    state = _seed_sequence(seed, purpose, counters).generate_state(1, dtype=np.uint64)
    return int(state[0])
