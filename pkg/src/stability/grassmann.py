"""Enumeration of subspaces of GF(p)^n by reduced echelon representatives.

A w-dimensional subspace has exactly one w x n reduced row echelon basis.
Representatives are grouped by pivot columns (in lexicographic order) and,
within a pivot pattern, by the values of the free entries in product order.
This total order lets the sweep be cut into disjoint index ranges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from src.core.fields import FieldSpec

EchelonBasis = tuple[tuple[int, ...], ...]


def gaussian_binomial(n: int, w: int, p: int) -> int:
    """Number of w-dimensional subspaces of GF(p)^n."""
    if not 0 <= w <= n:
        raise ValueError(f"need 0 <= w <= n, got w={w}, n={n}")
    num = den = 1
    for i in range(w):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _free_positions(pivots: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    pivot_set = set(pivots)
    return [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivot_set]


@dataclass(frozen=True)
class GrassmannEnumerator:
    """All w-dimensional subspaces of GF(p)^n."""

    n: int
    w: int
    p: int

    def __post_init__(self) -> None:
        FieldSpec.prime(self.p)
        if not 0 <= self.w <= self.n:
            raise ValueError(f"need 0 <= w <= n, got w={self.w}, n={self.n}")

    @property
    def count(self) -> int:
        return gaussian_binomial(self.n, self.w, self.p)

    def __len__(self) -> int:
        return self.count

    def patterns(self) -> Iterator[tuple[tuple[int, ...], list[tuple[int, int]]]]:
        for pivots in itertools.combinations(range(self.n), self.w):
            yield pivots, _free_positions(pivots, self.n)

    def _build(self, pivots: tuple[int, ...], free: list[tuple[int, int]],
               values: tuple[int, ...]) -> EchelonBasis:
        rows = [[0] * self.n for _ in pivots]
        for i, c in enumerate(pivots):
            rows[i][c] = 1
        for (i, j), v in zip(free, values):
            rows[i][j] = v
        return tuple(tuple(r) for r in rows)

    def __iter__(self) -> Iterator[EchelonBasis]:
        return self.iter_range(0, self.count)

    def iter_range(self, start: int, stop: int) -> Iterator[EchelonBasis]:
        """Representatives with canonical index in [start, stop)."""
        offset = 0
        for pivots, free in self.patterns():
            size = self.p ** len(free)
            lo, hi = max(start - offset, 0), min(stop - offset, size)
            if lo < hi:
                values = itertools.product(range(self.p), repeat=len(free))
                for vals in itertools.islice(values, lo, hi):
                    yield self._build(pivots, free, vals)
            offset += size
            if offset >= stop:
                return

    def chunks(self, size: int) -> list[tuple[int, int]]:
        """Disjoint index ranges of at most ``size`` representatives covering the sweep."""
        if size < 1:
            raise ValueError(f"chunk size must be positive, got {size}")
        total = self.count
        return [(lo, min(lo + size, total)) for lo in range(0, total, size)]
