"""Numerical types of coherent systems, for curves the P^1 engine cannot realise.

The pullback law: along a finite map of degree k, degrees multiply by k while
ranks and section counts stay put, so every reduced-slope comparison survives.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from fractions import Fraction


@dataclass(frozen=True)
class NumericalSystem:
    """Type (r, d, n) on a curve of genus g, plus optional audit parameters."""

    r: int
    d: int
    n: int
    g: int | None = 0
    a: int | None = None
    s: int | None = None
    e: int | None = None
    m: int | None = None
    k: int | None = None
    d_prime: int | None = None
    r_prime: int | None = None
    t: int | None = None

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError(f"rank must be >= 1, got {self.r}")
        if self.n < 1:
            raise ValueError(f"section count must be >= 1, got {self.n}")
        if self.g is not None and self.g < 0:
            raise ValueError(f"genus must be >= 0, got {self.g}")

    @property
    def type_tuple(self) -> tuple[int, int, int]:
        return self.r, self.d, self.n

    @property
    def slope(self) -> Fraction:
        return Fraction(self.d, self.r)

    @property
    def reduced_slope(self) -> Fraction:
        """d / (n - r), the right-hand side of the linear stability inequality."""
        if self.n <= self.r:
            raise ValueError(f"reduced slope needs n > r, got n={self.n}, r={self.r}")
        return Fraction(self.d, self.n - self.r)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def pullback_numeric(
    data: NumericalSystem, k: int, cover_genus: int | None = None
) -> NumericalSystem:
    """Numerical type of the pullback along a degree-k cover.

    Degree-valued fields scale by k.  The genus of the cover is not determined
    by the type, so it is ``cover_genus`` when supplied and unknown otherwise.
    """
    if k < 1:
        raise ValueError(f"cover degree must be >= 1, got {k}")
    if k == 1:
        return data
    return replace(
        data,
        d=k * data.d,
        a=None if data.a is None else k * data.a,
        e=None if data.e is None else k * data.e,
        d_prime=None if data.d_prime is None else k * data.d_prime,
        g=cover_genus,
    )
