"""Coherent systems (E, V) on P^1.

A system is a split bundle E together with n linearly independent global
sections, stored in reduced echelon form with respect to the monomial basis
of H^0(E) so that two descriptions of the same V compare equal.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.core.errors import (
    CertificationError,
    DependentSectionsError,
    NotGeneratedError,
    ResourceGuardError,
)
from src.core.fields import FieldSpec, Scalar
from src.core.forms import BinaryForm, bf_gcd
from src.sheaves import linalg
from src.sheaves.bundle_map import (
    BundleMap,
    block_sizes,
    forms_to_vector,
    graded_piece,
    vector_to_forms,
)
from src.sheaves.kernel import (
    ImageData,
    KernelResult,
    image_data,
    kernel_splitting,
    kernel_type_from_invariants,
    twist_bounds,
)
from src.sheaves.splitting import SplittingType
from src.utils.seeding import rng_for

log = logging.getLogger(__name__)

Section = tuple[BinaryForm, ...]


@dataclass(frozen=True)
class CoherentSystemP1:
    """A bundle E = sum O(a_i) and a subspace V of H^0(E) given by an echelon basis."""

    bundle: SplittingType
    sections: tuple[Section, ...]
    field: FieldSpec
    rejected_draws: int = dataclasses.field(default=0, compare=False)

    def __post_init__(self) -> None:
        for j, sec in enumerate(self.sections):
            if len(sec) != self.bundle.rank:
                raise ValueError(
                    f"section {j} has {len(sec)} components for rank {self.bundle.rank}"
                )
            for i, f in enumerate(sec):
                if not f.is_zero and f.degree != self.bundle.degrees[i]:
                    raise ValueError(
                        f"section {j} component {i} has degree {f.degree}, "
                        f"expected {self.bundle.degrees[i]}"
                    )
        if linalg.rank(self.section_vectors, self.bundle.h0(), self.field) != len(self.sections):
            raise DependentSectionsError(f"{len(self.sections)} sections are linearly dependent")

    @classmethod
    def from_sections(
        cls,
        bundle: SplittingType,
        sections: Sequence[Sequence[BinaryForm]],
        field: FieldSpec,
        rejected_draws: int = 0,
    ) -> CoherentSystemP1:
        """Build a system, replacing the given basis by the echelon basis of its span."""
        vectors = [forms_to_vector(sec, bundle) for sec in sections]
        reduced, _ = linalg.rref(vectors, bundle.h0(), field)
        if len(reduced) != len(sections):
            raise DependentSectionsError(
                f"{len(sections)} sections span only a {len(reduced)}-dimensional space"
            )
        echelon = tuple(tuple(vector_to_forms(v, bundle, 0, field)) for v in reduced)
        return cls(bundle, echelon, field, rejected_draws)

    # ── Numerical type ────────────────────────────────────────────

    @property
    def r(self) -> int:
        return self.bundle.rank

    @property
    def d(self) -> int:
        return self.bundle.degree

    @property
    def n(self) -> int:
        return len(self.sections)

    @property
    def type_tuple(self) -> tuple[int, int, int]:
        return self.r, self.d, self.n

    @property
    def section_vectors(self) -> list[list[Scalar]]:
        return [forms_to_vector(sec, self.bundle) for sec in self.sections]

    @property
    def evaluation_map(self) -> BundleMap:
        """V (x) O -> E."""
        return BundleMap.from_columns(
            SplittingType.trivial(self.n), self.bundle, self.sections, self.field
        )

    def to_dict(self) -> dict:
        return {
            "field": self.field.label,
            "bundle": list(self.bundle.degrees),
            "type": list(self.type_tuple),
            "sections": [[f.to_text() for f in sec] for sec in self.sections],
        }


@dataclass(frozen=True)
class SubsheafReport:
    """The subsheaf E_W generated by a subspace W of V."""

    w_basis: tuple[tuple[Scalar, ...], ...]
    kernel_splitting: SplittingType
    rank_EW: int
    deg_EW: int
    trivial: bool

    @property
    def dim_w(self) -> int:
        return len(self.w_basis)

    def to_dict(self, field: FieldSpec) -> dict:
        return {
            "w_basis": [[field.format_scalar(c) for c in row] for row in self.w_basis],
            "kernel_splitting": list(self.kernel_splitting.degrees),
            "rank_EW": self.rank_EW,
            "deg_EW": self.deg_EW,
            "trivial": self.trivial,
        }


def is_generated(sys: CoherentSystemP1) -> bool:
    """V generates E everywhere: the maximal minors have no common zero on P^1."""
    if sys.n < sys.r:
        return False
    minors = [m for m in sys.evaluation_map.minors(sys.r) if not m.is_zero]
    if not minors:
        return False
    return bf_gcd(minors).degree == 0


def dual_span(sys: CoherentSystemP1) -> KernelResult:
    """The dual span bundle M_{V,E} = ker(V (x) O -> E) with an explicit basis."""
    if not is_generated(sys):
        raise NotGeneratedError(f"system of type {sys.type_tuple} does not generate E")
    result = kernel_splitting(sys.evaluation_map)
    m = result.splitting
    if m.rank != sys.n - sys.r or m.degree != -sys.d:
        raise CertificationError(
            f"dual span {m.to_text()} has (rank, degree) ({m.rank}, {m.degree}), "
            f"expected ({sys.n - sys.r}, {-sys.d})"
        )
    log.debug("dual span of %s: %s", sys.type_tuple, m.to_text())
    return result


def echelon_subspace(
    coords: Sequence[Sequence[Scalar]], n: int, fs: FieldSpec
) -> tuple[tuple[Scalar, ...], ...]:
    """Canonical reduced echelon basis of a subspace of V, given coordinate vectors."""
    rows = [[fs(c) for c in row] for row in coords]
    if any(len(row) != n for row in rows):
        raise ValueError(f"subspace coordinates must have length {n}")
    reduced, _ = linalg.rref(rows, n, fs)
    if len(reduced) != len(rows):
        raise DependentSectionsError(f"{len(rows)} vectors span a {len(reduced)}-dimensional W")
    return tuple(tuple(row) for row in reduced)


def check_image_dichotomy(w: int, data: ImageData) -> None:
    """E_W is either trivial of rank dim W, or of positive degree at least dim W - rank."""
    if data.degree == 0 and data.rank != w:
        raise CertificationError(f"degree-0 image of rank {data.rank} from a {w}-dimensional W")
    if data.degree != 0 and (data.rank >= w or data.degree < w - data.rank):
        raise CertificationError(
            f"image (rank {data.rank}, degree {data.degree}) breaks the dichotomy for dim W = {w}"
        )


def subsheaf_generated(
    sys: CoherentSystemP1, w_coords: Sequence[Sequence[Scalar]]
) -> SubsheafReport:
    """Rank and degree of E_W = Im(W (x) O -> E)."""
    if not w_coords:
        raise ValueError("W must be a nonzero subspace")
    basis = echelon_subspace(w_coords, sys.n, sys.field)
    bmap = sys.evaluation_map.restrict_columns(basis)
    data = image_data(bmap)
    kernel = kernel_type_from_invariants(bmap, data)
    check_image_dichotomy(len(basis), data)
    return SubsheafReport(basis, kernel, data.rank, data.degree, data.degree == 0)


class GradedEvaluation:
    """V (x) O -> E at its two top twists, as int64 arrays over GF(p).

    The twist bound of W (x) O -> E does not depend on W, so both pieces are
    built once per system and W enters by multiplying its coordinates in.
    """

    def __init__(self, sys: CoherentSystemP1) -> None:
        if not sys.field.is_prime:
            raise ValueError("graded evaluation needs a prime field")
        self.p = sys.field.p
        emap = sys.evaluation_map
        _, self.top = twist_bounds(emap)
        self._pieces: dict[int, np.ndarray] = {}
        for d in (self.top - 1, self.top):
            nrows = sum(block_sizes(sys.bundle, d))
            piece = np.array(graded_piece(emap, d), dtype=np.int64)
            # rows: H^0(E(d)); axes 1 and 2: section j, monomial k of degree d
            self._pieces[d] = piece.reshape(nrows, sys.n, d + 1)

    def image_data(self, w_basis: Sequence[Sequence[Scalar]]) -> ImageData:
        """Rank and degree of E_W for independent coordinate rows ``w_basis``."""
        c = np.array(w_basis, dtype=np.int64)
        w = c.shape[0]
        h0 = {}
        for d, piece in self._pieces.items():
            restricted = np.einsum("rjk,ij->rik", piece, c).reshape(piece.shape[0], -1) % self.p
            h0[d] = w * (d + 1) - linalg.rank_mod_p(restricted, self.p)
        k_rank = h0[self.top] - h0[self.top - 1]
        k_deg = h0[self.top] - k_rank * (self.top + 1)
        return ImageData(rank=w - k_rank, degree=-k_deg, kernel_rank=k_rank, kernel_degree=k_deg)


def monomial_sections(bundle: SplittingType, fs: FieldSpec) -> list[Section]:
    """The monomial basis of H^0(E), summand by summand."""
    out = []
    for i, a in enumerate(bundle.degrees):
        for k in range(a + 1):
            sec = [BinaryForm.zero(fs)] * bundle.rank
            sec[i] = BinaryForm.monomial(fs, a, k)
            out.append(tuple(sec))
    return out


def random_system(
    bundle: SplittingType,
    n: int,
    seed: int,
    fs: FieldSpec,
    require_generated: bool = False,
    max_draws: int = 1000,
    coeff_bound: int = 9,
) -> CoherentSystemP1:
    """n random independent sections of E, rejection-sampled from a seeded stream."""
    h0 = bundle.h0()
    if not 1 <= n <= h0:
        raise ValueError(f"cannot choose {n} independent sections from h0(E) = {h0}")
    if require_generated and n < bundle.rank:
        raise NotGeneratedError(f"{n} sections cannot generate a rank-{bundle.rank} bundle")
    if n == h0:
        sys = CoherentSystemP1.from_sections(bundle, monomial_sections(bundle, fs), fs)
        if require_generated and not is_generated(sys):
            raise NotGeneratedError(f"complete series of {bundle.to_text()} is not generating")
        return sys
    rng = rng_for(seed, "sections")
    rejected = 0
    for _ in range(max_draws):
        vectors = [[fs.random_scalar(rng, coeff_bound) for _ in range(h0)] for _ in range(n)]
        if linalg.rank(vectors, h0, fs) < n:
            rejected += 1
            continue
        secs = [vector_to_forms(v, bundle, 0, fs) for v in vectors]
        sys = CoherentSystemP1.from_sections(bundle, secs, fs, rejected_draws=rejected)
        if require_generated and not is_generated(sys):
            rejected += 1
            continue
        log.debug("sampled %s system after %d rejections", sys.type_tuple, rejected)
        return sys
    raise ResourceGuardError(
        f"no admissible system of type ({bundle.rank}, {bundle.degree}, {n}) in {max_draws} draws"
    )
