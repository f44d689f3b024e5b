"""Tunable limits for the stability searches."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class StabilityConfig:
    """Resource guards and search sizes.

    The guards only bound exhaustive GF(p) sweeps; raise them deliberately.
    """

    max_n: int = 6
    max_prime: int = 13
    max_workers: int = 1
    chunk_size: int = 256
    keep_certificates: int = 50
    sampled_subspaces: int = 200
    coeff_bound: int = 9
