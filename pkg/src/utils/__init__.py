from src.utils.seeding import PURPOSES, rng_for, sub_seed

__all__ = ["PURPOSES", "rng_for", "sub_seed"]
