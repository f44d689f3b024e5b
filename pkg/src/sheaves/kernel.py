"""Kernels and images of bundle maps on P^1.

The kernel K of a map between split bundles is again split, K = sum O(-b_k).
Its splitting type is read off the twisted section counts h(d) = h0(K(d)):
the first difference h(d) - h(d-1) counts the b_k that are <= d.  An
explicit free basis is built alongside by keeping, in each twist, the kernel
vectors not already reached from the previous twist by multiplying with s
and t.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from src.core.errors import CertificationError
from src.core.forms import bf_divexact, bf_gcd
from src.sheaves import linalg
from src.sheaves.bundle_map import (
    BundleMap,
    block_sizes,
    graded_piece,
    shift_vector,
    vector_to_forms,
)
from src.sheaves.splitting import SplittingType
from src.utils.seeding import rng_for

log = logging.getLogger(__name__)

RANK_SAMPLE_POINTS = 8


@dataclass(frozen=True)
class H0Profile:
    """Kernel section dimensions h(start), h(start+1), ..., per twist."""

    start: int
    values: tuple[int, ...]

    def at(self, d: int) -> int:
        """h(d), extrapolated linearly past the measured range."""
        if d < self.start:
            return 0
        if d <= self.stop:
            return self.values[d - self.start]
        return self.values[-1] + (d - self.stop) * self.eventual_slope

    @property
    def stop(self) -> int:
        return self.start + len(self.values) - 1

    @property
    def differences(self) -> list[int]:
        prev = 0
        out = []
        for v in self.values:
            out.append(v - prev)
            prev = v
        return out

    @property
    def eventual_slope(self) -> int:
        return self.differences[-1] if self.values else 0

    def is_consistent(self) -> bool:
        """Nondecreasing with nonnegative second differences."""
        diffs = self.differences
        return all(x >= 0 for x in diffs) and all(b >= a for a, b in zip(diffs, diffs[1:]))

    @classmethod
    def of_splitting(cls, k: SplittingType, start: int, stop: int) -> H0Profile:
        return cls(start, tuple(k.h0(d) for d in range(start, stop + 1)))

    def to_dict(self) -> dict:
        return {"start": self.start, "values": list(self.values)}


@dataclass(frozen=True)
class KernelResult:
    """Kernel splitting type, a free basis (as a map into the source), and the measured profile."""

    splitting: SplittingType
    basis: BundleMap
    profile: H0Profile


@dataclass(frozen=True)
class ImageData:
    rank: int
    degree: int
    kernel_rank: int
    kernel_degree: int


def twist_bounds(bmap: BundleMap) -> tuple[int, int]:
    """Twists (lo, hi) with h(lo) = 0 and every kernel summand already active at hi - 1.

    Kernel summands are bounded above by the largest source twist, and below
    by deg(source) - sum(max(a_i, 0)) - (rank(source) - 1) * max(c_max, 0):
    an image inside the target has degree at most the sum of its nonnegative twists.
    """
    cmax = max(bmap.source.degrees)
    pos_target = sum(max(a, 0) for a in bmap.target.degrees)
    lower = bmap.source.degree - pos_target - (bmap.source.rank - 1) * max(cmax, 0)
    return -cmax - 1, -lower + 1


def kernel_h0(bmap: BundleMap, d: int) -> int:
    """h0 of the kernel twisted by d, from one graded rank."""
    ncols = sum(block_sizes(bmap.source, d))
    rows = graded_piece(bmap, d)
    return ncols - linalg.rank(rows, ncols, bmap.field)


def measure_profile(bmap: BundleMap) -> H0Profile:
    lo, hi = twist_bounds(bmap)
    return H0Profile(lo, tuple(kernel_h0(bmap, d) for d in range(lo, hi + 1)))


def kernel_splitting(bmap: BundleMap) -> KernelResult:
    """Splitting type and free basis of ker(bmap), certified against graded ranks."""
    field = bmap.field
    src = bmap.source
    lo, hi = twist_bounds(bmap)
    values: list[int] = []
    generators: list[tuple[int, list]] = []
    prev: list[list] = []
    for d in range(lo, hi + 1):
        ncols = sum(block_sizes(src, d))
        null = linalg.nullspace(graded_piece(bmap, d), ncols, field)
        values.append(len(null))
        lifted = [shift_vector(v, src, d - 1, by_t, field) for v in prev for by_t in (False, True)]
        pivots = linalg.independent_columns(lifted + null, ncols, field)
        fresh = [null[p - len(lifted)] for p in pivots if p >= len(lifted)]
        generators.extend((d, v) for v in fresh)
        prev = null
        log.debug("twist %d: h0=%d, %d new generators", d, len(null), len(fresh))

    splitting = SplittingType(-d for d, _ in generators)
    profile = H0Profile(lo, tuple(values))
    expected = H0Profile.of_splitting(splitting, lo, hi)
    if expected != profile:
        raise CertificationError(
            f"kernel type {splitting.to_text()} predicts {expected.values}, "
            f"measured {profile.values}"
        )
    columns = [vector_to_forms(v, src, d, field) for d, v in generators]
    basis = BundleMap.from_columns(splitting, src, columns, field) if columns else None
    if basis is None:
        basis = BundleMap.from_columns(SplittingType([]), src, [], field)
    elif not bmap.compose(basis).is_zero_map:
        raise CertificationError("kernel basis is not annihilated by the map")
    return KernelResult(splitting, basis, profile)


def image_data(bmap: BundleMap) -> ImageData:
    """Rank and degree of the image sheaf, from the two top twists only.

    Past the twist bound h(d) = deg K + rank K * (d + 1), so two graded ranks
    determine both invariants of the kernel and hence of the image.
    """
    _, hi = twist_bounds(bmap)
    h_hi = kernel_h0(bmap, hi)
    h_prev = kernel_h0(bmap, hi - 1)
    k_rank = h_hi - h_prev
    k_deg = h_hi - k_rank * (hi + 1)
    return ImageData(
        rank=bmap.source.rank - k_rank,
        degree=bmap.source.degree - k_deg,
        kernel_rank=k_rank,
        kernel_degree=k_deg,
    )


def kernel_type_from_invariants(bmap: BundleMap, data: ImageData) -> SplittingType:
    """Kernel splitting type, skipping the full profile when the rank pins it down."""
    if data.kernel_rank == 0:
        return SplittingType([])
    if data.kernel_rank == 1:
        return SplittingType([data.kernel_degree])
    return kernel_splitting(bmap).splitting


def generic_rank(
    bmap: BundleMap,
    rng: np.random.Generator | None = None,
    points: int = RANK_SAMPLE_POINTS,
) -> int:
    """Rank over the function field, sampled at random points and certified by the profile."""
    certified = image_data(bmap).rank
    rng = rng if rng is not None else rng_for(0, "rank-points")
    field = bmap.field
    sampled = 0
    tried = 0
    while tried < 4 * points and sampled < certified:
        s, t = field.random_scalar(rng), field.random_scalar(rng)
        if s == 0 and t == 0:
            continue
        tried += 1
        sampled = max(sampled, linalg.rank(bmap.evaluate(s, t), bmap.source.rank, field))
    if sampled > certified:
        raise CertificationError(f"sampled rank {sampled} exceeds certified rank {certified}")
    if sampled < certified:
        # Schwartz-Zippel: a nonzero minor of degree D vanishes at most at D points of P^1.
        degree_bound = max(bmap.max_entry_degree(), 0) * certified
        if field.is_prime and field.p + 1 <= degree_bound:
            log.debug(
                "GF(%d) has too few points for minors of degree %d; using certified rank %d",
                field.p, degree_bound, certified,
            )
        else:
            raise CertificationError(
                f"sampled rank {sampled} after {tried} points disagrees with certified {certified}"
            )
    return certified


# ── Saturations (rank-one and full-rank images only) ──────────────────


def full_rank_colength(bmap: BundleMap) -> int:
    """Length of target / image for a map whose image has full target rank."""
    minors = [m for m in bmap.minors(bmap.target.rank) if not m.is_zero]
    if not minors:
        raise ValueError("image does not have full rank")
    return bf_gcd(minors).degree


def rank_one_image_degree(bmap: BundleMap) -> tuple[int, int]:
    """(saturation degree, image degree) for a map whose image has rank one.

    Writing every column as g_j * u with u primitive, the saturation is the
    line O(m) spanned by u and the image has colength deg gcd(g_j) in it.
    """
    cols = [c for c in bmap.columns if any(not f.is_zero for f in c)]
    if not cols:
        raise ValueError("zero map has no rank-one image")
    first = cols[0]
    content = bf_gcd(list(first))
    u = [f if f.is_zero else bf_divexact(f, content) for f in first]
    i = next(k for k, f in enumerate(u) if not f.is_zero)
    m = bmap.target.degrees[i] - u[i].degree
    multipliers = []
    for col in cols:
        g = bf_divexact(col[i], u[i])
        if any(g * u[k] != f for k, f in enumerate(col)):
            raise ValueError("columns are not proportional: image rank exceeds one")
        multipliers.append(g)
    return m, m - bf_gcd(multipliers).degree


def is_saturated_inclusion(bmap: BundleMap) -> bool:
    """True when an injective map has a subbundle image (maximal minors without common zero)."""
    minors = [m for m in bmap.minors(bmap.source.rank) if not m.is_zero]
    return bool(minors) and bf_gcd(minors).degree == 0
