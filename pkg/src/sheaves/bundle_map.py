"""Maps between split bundles on P^1 as matrices of binary forms.

Entry (i, j) of a map ``O(c_1)+...+O(c_m) -> O(a_1)+...+O(a_r)`` is a form
of degree a_i - c_j, and must be zero when that degree is negative.  Row
and column order follow the (descending) order of the splitting types.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

from src.core.errors import FieldMismatchError
from src.core.fields import FieldSpec, Scalar
from src.core.forms import BinaryForm, bf_mul, bf_sum
from src.sheaves.splitting import SplittingType

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BundleMap:
    """A homomorphism ``source -> target`` of split bundles."""

    source: SplittingType
    target: SplittingType
    entries: tuple[tuple[BinaryForm, ...], ...]
    field: FieldSpec

    def __post_init__(self) -> None:
        if len(self.entries) != self.target.rank:
            raise ValueError(f"{len(self.entries)} rows for a rank-{self.target.rank} target")
        for i, row in enumerate(self.entries):
            if len(row) != self.source.rank:
                raise ValueError(
                    f"row {i} has {len(row)} entries for a rank-{self.source.rank} source"
                )
            for j, f in enumerate(row):
                if f.field != self.field:
                    raise FieldMismatchError(f"entry ({i},{j}) over {f.field.label}")
                want = self.target.degrees[i] - self.source.degrees[j]
                if not f.is_zero and f.degree != want:
                    raise ValueError(
                        f"entry ({i},{j}) has degree {f.degree}, expected {want}"
                    )

    # ── Constructors ──────────────────────────────────────────────

    @classmethod
    def from_rows(
        cls,
        source: SplittingType,
        target: SplittingType,
        rows: Sequence[Sequence[BinaryForm]],
        field: FieldSpec,
    ) -> BundleMap:
        return cls(source, target, tuple(tuple(r) for r in rows), field)

    @classmethod
    def from_columns(
        cls,
        source: SplittingType,
        target: SplittingType,
        columns: Sequence[Sequence[BinaryForm]],
        field: FieldSpec,
    ) -> BundleMap:
        rows = [[col[i] for col in columns] for i in range(target.rank)]
        return cls.from_rows(source, target, rows, field)

    @classmethod
    def zero(cls, source: SplittingType, target: SplittingType, field: FieldSpec) -> BundleMap:
        z = BinaryForm.zero(field)
        return cls.from_rows(source, target, [[z] * source.rank for _ in target.degrees], field)

    # ── Shape ─────────────────────────────────────────────────────

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.rank, self.source.rank

    def column(self, j: int) -> tuple[BinaryForm, ...]:
        return tuple(row[j] for row in self.entries)

    @property
    def columns(self) -> list[tuple[BinaryForm, ...]]:
        return [self.column(j) for j in range(self.source.rank)]

    @property
    def is_zero_map(self) -> bool:
        return all(f.is_zero for row in self.entries for f in row)

    def max_entry_degree(self) -> int:
        return max((f.degree for row in self.entries for f in row), default=-1)

    # ── Algebra ───────────────────────────────────────────────────

    def compose(self, inner: BundleMap) -> BundleMap:
        """``self o inner``."""
        if inner.target != self.source:
            raise ValueError(f"cannot compose: {inner.target!r} is not {self.source!r}")
        if inner.field != self.field:
            raise FieldMismatchError(f"{inner.field.label} vs {self.field.label}")
        rows = [
            [
                bf_sum((bf_mul(self.entries[i][k], inner.entries[k][j])
                        for k in range(self.source.rank)), self.field)
                for j in range(inner.source.rank)
            ]
            for i in range(self.target.rank)
        ]
        return BundleMap.from_rows(inner.source, self.target, rows, self.field)

    def dual(self) -> BundleMap:
        """The transpose ``target^v -> source^v``."""
        dual_src = self.target.dual()
        dual_tgt = self.source.dual()
        # dual() reverses the descending order, so indices flip.
        r, m = self.target.rank, self.source.rank
        rows = [[self.entries[r - 1 - i][m - 1 - j] for i in range(r)] for j in range(m)]
        return BundleMap.from_rows(dual_src, dual_tgt, rows, self.field)

    def restrict_columns(self, coords: Sequence[Sequence[Scalar]]) -> BundleMap:
        """Precompose a trivial-source map with constant coordinates.

        ``coords`` lists vectors in the current source (one per new column);
        only meaningful when the source is trivial.
        """
        if not self.source.is_trivial:
            raise ValueError("restrict_columns needs a trivial source")
        f = self.field
        cols = []
        for vec in coords:
            col = []
            for i in range(self.target.rank):
                terms = [self.entries[i][j].scale(c) for j, c in enumerate(vec) if c != 0]
                col.append(bf_sum(terms, f))
            cols.append(col)
        return BundleMap.from_columns(SplittingType.trivial(len(cols)), self.target, cols, f)

    def evaluate(self, s: Scalar, t: Scalar) -> list[list[Scalar]]:
        return [[f.evaluate(s, t) for f in row] for row in self.entries]

    def minors(self, k: int) -> list[BinaryForm]:
        """All k x k minors, as forms (zero minors included)."""
        out = []
        for rows in itertools.combinations(range(self.target.rank), k):
            for cols in itertools.combinations(range(self.source.rank), k):
                out.append(_det([[self.entries[i][j] for j in cols] for i in rows], self.field))
        return out

    def to_dict(self) -> dict:
        return {
            "source": list(self.source.degrees),
            "target": list(self.target.degrees),
            "entries": [[f.to_text() for f in row] for row in self.entries],
        }


def _det(m: list[list[BinaryForm]], field: FieldSpec) -> BinaryForm:
    # Laplace expansion; the matrices here are at most rank(E) wide.
    if len(m) == 1:
        return m[0][0]
    acc = BinaryForm.zero(field)
    for j, a in enumerate(m[0]):
        if a.is_zero:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = bf_mul(a, _det(sub, field))
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


# ── Graded pieces ─────────────────────────────────────────────────────


def block_sizes(t: SplittingType, d: int) -> list[int]:
    return [max(0, a + d + 1) for a in t.degrees]


def graded_piece(bmap: BundleMap, d: int) -> list[list[Scalar]]:
    """Matrix of H^0(bmap(d)) in monomial bases (rows: target, columns: source).

    Monomials of a block are ordered by the power of t, matching BinaryForm
    coefficient order; multiplication by a form is then a Toeplitz block.
    """
    field = bmap.field
    src = block_sizes(bmap.source, d)
    tgt = block_sizes(bmap.target, d)
    src_off = list(itertools.accumulate([0, *src]))
    tgt_off = list(itertools.accumulate([0, *tgt]))
    rows = [[field.zero] * src_off[-1] for _ in range(tgt_off[-1])]
    for i, row in enumerate(bmap.entries):
        for j, f in enumerate(row):
            if f.is_zero or src[j] == 0:
                continue
            for k in range(src[j]):
                col = src_off[j] + k
                for l, c in enumerate(f.coeffs):
                    if c != 0:
                        rows[tgt_off[i] + k + l][col] = c
    return rows


def shift_vector(vec: Sequence[Scalar], t: SplittingType, d: int, by_t: bool,
                 field: FieldSpec) -> list[Scalar]:
    """Multiply a section of ``t(d)`` by s (or by t) giving a section of ``t(d+1)``."""
    old = block_sizes(t, d)
    new = block_sizes(t, d + 1)
    out: list[Scalar] = []
    pos = 0
    for o, n in zip(old, new):
        block = list(vec[pos:pos + o])
        pos += o
        if o == 0:
            out.extend([field.zero] * n)
        elif by_t:
            out.extend([field.zero, *block])
        else:
            out.extend([*block, field.zero])
    return out


def vector_to_forms(vec: Sequence[Scalar], t: SplittingType, d: int,
                    field: FieldSpec) -> list[BinaryForm]:
    """Split a coefficient vector of H^0(t(d)) into one form per summand."""
    forms = []
    pos = 0
    for size in block_sizes(t, d):
        forms.append(BinaryForm.from_coeffs(field, vec[pos:pos + size]))
        pos += size
    return forms


def forms_to_vector(forms: Sequence[BinaryForm], t: SplittingType, d: int = 0) -> list[Scalar]:
    out: list[Scalar] = []
    for f, a in zip(forms, t.degrees):
        if a + d >= 0:
            out.extend(f.padded(a + d))
    return out
