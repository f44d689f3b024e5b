"""Per-purpose seed splitting.

Every random draw in a run descends from one scenario seed.  A purpose name
(``"sections"``, ``"subspaces"``, ``"rank-points"``, ``"mult-map"``,
``"witness"``, ``"certificates"``) and an index select an independent
stream, so adding a consumer never shifts the draws of another and serial
and parallel runs see the same numbers.
"""

from __future__ import annotations

import zlib

import numpy as np

PURPOSES = ("sections", "subspaces", "rank-points", "mult-map", "witness", "certificates")


def _sequence(seed: int, purpose: str, index: int) -> np.random.SeedSequence:
    if purpose not in PURPOSES:
        raise ValueError(f"unknown seed purpose {purpose!r}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    return np.random.SeedSequence(seed, spawn_key=(zlib.crc32(purpose.encode()), index))


def sub_seed(seed: int, purpose: str, index: int = 0) -> int:
    """A 63-bit integer seed for ``purpose``/``index`` derived from ``seed``."""
    state = _sequence(seed, purpose, index).generate_state(1, dtype=np.uint64)
    return int(state[0] >> np.uint64(1))


def rng_for(seed: int, purpose: str, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(_sequence(seed, purpose, index))
