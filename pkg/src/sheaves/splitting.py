"""Split vector bundles on P^1, recorded by their splitting type."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


def cohomology_line(a: int) -> tuple[int, int]:
    """(h0, h1) of O(a) on P^1."""
    return max(0, a + 1), max(0, -a - 1)


@dataclass(frozen=True)
class SplittingType:
    """The multiset of twists a_1 >= ... >= a_r of a bundle O(a_1) + ... + O(a_r).

    An empty type stands for the zero bundle; it only appears as the kernel of
    an injective map.
    """

    degrees: tuple[int, ...]

    def __init__(self, degrees: Iterable[int]) -> None:
        object.__setattr__(self, "degrees", tuple(sorted((int(a) for a in degrees), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> SplittingType:
        """Parse ``"3,4"`` or ``"O(3)+O(4)"``."""
        cleaned = text.replace("O(", "").replace(")", "").replace("+", ",")
        parts = [p for p in cleaned.replace(" ", "").split(",") if p]
        if not parts:
            raise ValueError(f"empty splitting type {text!r}")
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"bad splitting type {text!r}: {exc}") from exc

    @classmethod
    def trivial(cls, rank: int) -> SplittingType:
        return cls([0] * rank)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    @property
    def slope(self) -> Fraction:
        if not self.degrees:
            raise ValueError("the zero bundle has no slope")
        return Fraction(self.degree, self.rank)

    @property
    def is_empty(self) -> bool:
        return not self.degrees

    @property
    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.degrees)

    def h0(self, twist: int = 0) -> int:
        return sum(cohomology_line(a + twist)[0] for a in self.degrees)

    def h1(self, twist: int = 0) -> int:
        return sum(cohomology_line(a + twist)[1] for a in self.degrees)

    def twist(self, k: int) -> SplittingType:
        return SplittingType(a + k for a in self.degrees)

    def dual(self) -> SplittingType:
        return SplittingType(-a for a in self.degrees)

    def __add__(self, other: SplittingType) -> SplittingType:
        return SplittingType(self.degrees + other.degrees)

    def to_text(self) -> str:
        if not self.degrees:
            return "0"
        return " + ".join(f"O({a})" for a in self.degrees)

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "rank": self.rank, "degree": self.degree}

    def __repr__(self) -> str:
        return f"SplittingType({self.to_text()})"
