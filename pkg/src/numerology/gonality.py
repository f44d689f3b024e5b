"""Gonality sequences d_k = min deg L with h^0(L) >= k + 1."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class GonalityPreset(str, Enum):
    P1 = "p1"
    HYPERELLIPTIC = "hyperelliptic"
    BIELLIPTIC = "bielliptic"
    CUSTOM = "custom"


@dataclass(frozen=True)
class GonalityProfile:
    """The first few entries d_1, d_2, ... of a gonality sequence."""

    preset: GonalityPreset
    entries: tuple[int, ...]
    genus: int | None = None

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("a gonality profile needs at least one entry")
        if any(x < 1 for x in self.entries):
            raise ValueError(f"gonality entries must be positive: {self.entries}")
        if any(b < a for a, b in zip(self.entries, self.entries[1:])):
            raise ValueError(f"gonality entries must be nondecreasing: {self.entries}")

    @classmethod
    def p1(cls, length: int = 12) -> GonalityProfile:
        return cls(GonalityPreset.P1, tuple(range(1, length + 1)), genus=0)

    @classmethod
    def hyperelliptic(cls, g: int, length: int | None = None) -> GonalityProfile:
        """d_k = 2k while the multiples of the g^1_2 are special, then g + k."""
        if g < 2:
            raise ValueError(f"hyperelliptic curves have genus >= 2, got {g}")
        length = length or 2 * g
        entries = tuple(2 * k if k <= g - 1 else g + k for k in range(1, length + 1))
        return cls(GonalityPreset.HYPERELLIPTIC, entries, genus=g)

    @classmethod
    def bielliptic(cls, g: int = 6) -> GonalityProfile:
        """d_k = 2k + 2 for k <= 3 on a bielliptic curve of genus >= 6."""
        if g < 6:
            raise ValueError(f"the bielliptic preset needs genus >= 6, got {g}")
        return cls(GonalityPreset.BIELLIPTIC, (4, 6, 8), genus=g)

    @classmethod
    def custom(cls, entries, genus: int | None = None) -> GonalityProfile:
        return cls(GonalityPreset.CUSTOM, tuple(int(x) for x in entries), genus=genus)

    @classmethod
    def from_preset(cls, name: str, g: int | None = None) -> GonalityProfile:
        preset = GonalityPreset(name)
        if preset == GonalityPreset.P1:
            return cls.p1()
        if preset == GonalityPreset.HYPERELLIPTIC:
            if g is None:
                raise ValueError("the hyperelliptic preset needs a genus")
            return cls.hyperelliptic(g)
        if preset == GonalityPreset.BIELLIPTIC:
            return cls.bielliptic(g if g is not None else 6)
        raise ValueError("custom profiles are built from explicit entries")

    def __len__(self) -> int:
        return len(self.entries)

    def to_dict(self) -> dict:
        return {"preset": self.preset.value, "genus": self.genus, "entries": list(self.entries)}


def gonality_lookup(profile: GonalityProfile, k: int) -> int:
    if not 1 <= k <= len(profile):
        raise ValueError(f"d_{k} is outside the profile (1..{len(profile)})")
    return profile.entries[k - 1]
