"""Butler diagrams of a generated coherent system by a subbundle of its dual span bundle.

Given S inside M = ker(V (x) O -> E), the smallest W in V with S inside
W (x) O is spanned by the coefficient vectors of S's generators; dually,
W^v is the image of V^v -> H^0(S^v).  F_S is the quotient W (x) O / S, computed
on the dual side as F_S^v = ker(W^v (x) O -> S^v), and alpha: F_S -> E is the
unique map with alpha o q = ev_W.

    0 -> S -> W (x) O -> F_S -> 0
         |       |         | alpha
    0 -> M -> V (x) O ->   E -> 0

The snake lemma gives 0 -> N -> Q -> (V/W) (x) O -> T -> 0 with N = ker(alpha),
Q = M/S and T = coker(alpha); only their ranks and degrees are tracked.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from src.coherent.system import CoherentSystemP1, dual_span, subsheaf_generated
from src.core.errors import CertificationError, NotSaturatedError
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
    is_saturated_inclusion,
    kernel_h0,
    kernel_splitting,
    rank_one_image_degree,
    twist_bounds,
)
from src.sheaves.splitting import SplittingType

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegData:
    """Rank and degree of one sheaf in the diagram."""

    rank: int
    degree: int

    def to_dict(self) -> dict:
        return {"rank": self.rank, "degree": self.degree}


@dataclass(frozen=True)
class ButlerDiagram:
    system: CoherentSystemP1
    s_inclusion: BundleMap                       # S -> M
    m_basis: BundleMap                           # M -> V (x) O
    w_basis: tuple[tuple[Scalar, ...], ...]      # echelon basis of W in V-coordinates
    s_to_w: BundleMap                            # S -> W (x) O
    f_s: SplittingType
    q_map: BundleMap                             # W (x) O -> F_S
    alpha_map: BundleMap                         # F_S -> E
    image: ImageData                             # of alpha
    n_data: DegData                              # ker(alpha)
    q_data: DegData                              # M / S
    t_data: DegData                              # coker(alpha)

    @property
    def s(self) -> SplittingType:
        return self.s_inclusion.source

    @property
    def m(self) -> SplittingType:
        return self.m_basis.source

    @property
    def dim_w(self) -> int:
        return len(self.w_basis)

    def to_dict(self) -> dict:
        fs = self.system.field
        return {
            "S": list(self.s.degrees),
            "M": list(self.m.degrees),
            "W": [[fs.format_scalar(c) for c in row] for row in self.w_basis],
            "F_S": list(self.f_s.degrees),
            "alpha": self.alpha_map.to_dict(),
            "image_alpha": {"rank": self.image.rank, "degree": self.image.degree},
            "N": self.n_data.to_dict(),
            "Q": self.q_data.to_dict(),
            "T": self.t_data.to_dict(),
        }


# ── Subbundle choices ─────────────────────────────────────────────────


def summand_inclusion(m: SplittingType, indices: Sequence[int], fs: FieldSpec) -> BundleMap:
    """Inclusion of the chosen summands of a split bundle (indices into its descending order)."""
    idx = sorted(set(indices))
    if not idx or idx[0] < 0 or idx[-1] >= m.rank:
        raise ValueError(f"summand indices {list(indices)} out of range for rank {m.rank}")
    source = SplittingType(m.degrees[i] for i in idx)
    # SplittingType sorts descending; idx is ascending, so columns line up with source order.
    columns = []
    for i in idx:
        col = [BinaryForm.zero(fs)] * m.rank
        col[i] = BinaryForm.constant(fs, 1)
        columns.append(col)
    return BundleMap.from_columns(source, m, columns, fs)


def max_slope_subbundle(sys: CoherentSystemP1, dsb: KernelResult | None = None) -> BundleMap:
    """The maximal-slope subbundle of M: every summand of the top degree.

    The top degree and its multiplicity are found from h^0(M(d)) at increasing
    twists d, then checked against the splitting type of M.
    """
    dsb = dsb or dual_span(sys)
    m = dsb.splitting
    ev = sys.evaluation_map
    _, hi = twist_bounds(ev)
    top = count = None
    for d in range(1, hi + 2):
        h = kernel_h0(ev, d)
        if h > 0:
            top, count = -d, h
            break
    if top is None or top != m.degrees[0] or count != m.degrees.count(top):
        raise CertificationError(
            f"twist sweep found top degree {top} x{count}, splitting type is {m.to_text()}"
        )
    log.debug("maximal-slope subbundle O(%d)^%d of %s", top, count, m.to_text())
    return summand_inclusion(m, range(count), sys.field)


# ── Construction ──────────────────────────────────────────────────────


def _w_from_composite(c: BundleMap) -> tuple[tuple[Scalar, ...], ...]:
    fs = c.field
    vectors = []
    for j, col in enumerate(c.columns):
        e = -c.source.degrees[j]
        for k in range(e + 1):
            vectors.append([f.padded(e)[k] for f in col])
    reduced, _ = linalg.rref(vectors, c.target.rank, fs)
    return tuple(tuple(row) for row in reduced)


def _coordinates_in_w(
    c: BundleMap, w_basis: tuple[tuple[Scalar, ...], ...]
) -> BundleMap:
    """Rewrite S -> V (x) O as S -> W (x) O."""
    fs = c.field
    w = len(w_basis)
    n = c.target.rank
    transposed = [[w_basis[k][i] for k in range(w)] for i in range(n)]
    columns = []
    for j, col in enumerate(c.columns):
        e = -c.source.degrees[j]
        coeffs: list[list[Scalar]] = [[] for _ in range(w)]
        for k in range(e + 1):
            x = linalg.solve(transposed, [f.padded(e)[k] for f in col], w, fs)
            if x is None:
                raise CertificationError("a generator of S leaves W (x) O")
            for i in range(w):
                coeffs[i].append(x[i])
        columns.append([BinaryForm.from_coeffs(fs, cs) for cs in coeffs])
    return BundleMap.from_columns(c.source, SplittingType.trivial(w), columns, fs)


def _solve_alpha(
    sys: CoherentSystemP1, f_s: SplittingType, dual_kernel: KernelResult, ev_w: BundleMap
) -> BundleMap:
    """Row i of alpha, transposed, is a section of F_S^v(a_i) mapping to row i of ev_W."""
    fs = sys.field
    w = ev_w.source.rank
    k = dual_kernel.splitting
    trivial = SplittingType.trivial(w)
    rows = []
    for i, a in enumerate(sys.bundle.degrees):
        # dual() reverses summand order, so W coordinates and F_S summands come flipped.
        rhs = forms_to_vector([ev_w.entries[i][w - 1 - j] for j in range(w)], trivial, a)
        ncols = sum(block_sizes(k, a))
        x = linalg.solve(graded_piece(dual_kernel.basis, a), rhs, ncols, fs)
        if x is None:
            raise CertificationError(f"ev_W row {i} does not factor through F_S")
        forms = vector_to_forms(x, k, a, fs)
        rows.append([forms[k.rank - 1 - j] for j in range(k.rank)])
    return BundleMap.from_rows(f_s, sys.bundle, rows, fs)


def butler_from_subbundle(sys: CoherentSystemP1, s_map: BundleMap) -> ButlerDiagram:
    """Build the Butler diagram of (E, V) by the subbundle given as ``s_map: S -> M``."""
    dsb = dual_span(sys)
    m = dsb.splitting
    if s_map.target != m:
        raise ValueError(f"S maps into {s_map.target.to_text()}, not M = {m.to_text()}")
    if s_map.source.is_empty or image_data(s_map).kernel_rank != 0:
        raise ValueError("S -> M is not injective")
    if not is_saturated_inclusion(s_map):
        minors = [x for x in s_map.minors(s_map.source.rank) if not x.is_zero]
        raise NotSaturatedError("image of S is not a subbundle of M", defect=bf_gcd(minors).degree)

    composite = dsb.basis.compose(s_map)
    w_basis = _w_from_composite(composite)
    s_to_w = _coordinates_in_w(composite, w_basis)
    dual_kernel = kernel_splitting(s_to_w.dual())
    f_s = dual_kernel.splitting.dual()
    q_map = dual_kernel.basis.dual()

    ev_w = sys.evaluation_map.restrict_columns(w_basis)
    alpha = _solve_alpha(sys, f_s, dual_kernel, ev_w)
    if alpha.compose(q_map).entries != ev_w.entries:
        raise CertificationError("alpha o q differs from ev_W")

    image = image_data(alpha)
    diagram = ButlerDiagram(
        system=sys,
        s_inclusion=s_map,
        m_basis=dsb.basis,
        w_basis=w_basis,
        s_to_w=s_to_w,
        f_s=f_s,
        q_map=q_map,
        alpha_map=alpha,
        image=image,
        n_data=DegData(f_s.rank - image.rank, f_s.degree - image.degree),
        q_data=DegData(m.rank - s_map.source.rank, m.degree - s_map.source.degree),
        t_data=DegData(sys.r - image.rank, sys.d - image.degree),
    )
    log.info("Butler diagram by %s: dim W = %d, F_S = %s",
             s_map.source.to_text(), len(w_basis), f_s.to_text())
    return diagram


# ── Property audit ────────────────────────────────────────────────────


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool | None          # None: not applicable to this S
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class ButlerAudit:
    diagram: ButlerDiagram
    maximal_slope: bool
    destabilizing: bool
    image_degree: int
    checks: tuple[PropertyCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def check(self, name: str) -> PropertyCheck:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram.to_dict(),
            "maximal_slope": self.maximal_slope,
            "destabilizing": self.destabilizing,
            "image_degree": self.image_degree,
            "checks": [c.to_dict() for c in self.checks],
            "all_passed": self.all_passed,
        }


def _image_degree(alpha: BundleMap, data: ImageData) -> int:
    if data.rank != 1:
        return data.degree
    _, degree = rank_one_image_degree(alpha)
    if degree != data.degree:
        raise CertificationError(f"gcd image degree {degree} differs from graded {data.degree}")
    return degree


def _generated_by_w(q_map: BundleMap) -> bool:
    minors = [x for x in q_map.minors(q_map.target.rank) if not x.is_zero]
    return bool(minors) and bf_gcd(minors).degree == 0


def audit_properties(diag: ButlerDiagram) -> ButlerAudit:
    """Check properties (a)-(d) and the numeric exactness of the diagram.

    Failures are findings; nothing here raises for a failed property.
    """
    sys = diag.system
    s, m, f = diag.s, diag.m, diag.f_s
    w = diag.dim_w
    checks: list[PropertyCheck] = []

    h0_rank = linalg.rank(graded_piece(diag.q_map, 0), w, sys.field)
    checks.append(PropertyCheck(
        "a_W_in_H0_F_S", h0_rank == w, f"W -> H^0(F_S) has rank {h0_rank} of {w}"))
    checks.append(PropertyCheck(
        "b_generated_by_W", _generated_by_w(diag.q_map), "maximal minors of q without common zero"))
    checks.append(PropertyCheck(
        "b_h0_dual_vanishes", all(x >= 1 for x in f.degrees), f"F_S = {f.to_text()}"))
    checks.append(PropertyCheck(
        "c_alpha_nonzero", not diag.alpha_map.is_zero_map, f"image rank {diag.image.rank}"))

    image_degree = _image_degree(diag.alpha_map, diag.image)
    maximal = s.slope == Fraction(m.degrees[0])
    destabilizing = maximal and s.slope > m.slope
    if maximal:
        ok = f.degree <= image_degree
        if not ok:
            log.warning("deg F_S = %d exceeds deg Im(alpha) = %d for a maximal-slope S",
                        f.degree, image_degree)
        checks.append(PropertyCheck(
            "d_deg_F_S_le_deg_image", ok, f"{f.degree} <= {image_degree}"))
    else:
        checks.append(PropertyCheck(
            "d_deg_F_S_le_deg_image", None, f"S of slope {s.slope} is not of maximal slope"))
    if destabilizing:
        lhs = f.rank == diag.image.rank
        rhs = f.degree == image_degree
        checks.append(PropertyCheck(
            "d_rank_iff_degree", lhs == rhs,
            f"rk F_S = rk Im: {lhs}; deg F_S = deg Im: {rhs}"))
    else:
        checks.append(PropertyCheck("d_rank_iff_degree", None, "S does not destabilize M"))

    rows_ok = s.rank + f.rank == w and s.degree + f.degree == 0
    n, q, t = diag.n_data, diag.q_data, diag.t_data
    snake_ok = (n.rank - q.rank + (sys.n - w) - t.rank == 0
                and n.degree - q.degree - t.degree == 0)
    checks.append(PropertyCheck(
        "numeric_exactness", rows_ok and snake_ok,
        f"rk S + rk F_S = {s.rank + f.rank}, deg S + deg F_S = {s.degree + f.degree}, dim W = {w}"))

    recovered = kernel_splitting(diag.q_map).splitting
    checks.append(PropertyCheck(
        "S_is_kernel_of_q", recovered == s, f"ker q = {recovered.to_text()}"))

    e_w = subsheaf_generated(sys, diag.w_basis)
    checks.append(PropertyCheck(
        "E_W_is_image_of_alpha",
        (e_w.rank_EW, e_w.deg_EW) == (diag.image.rank, image_degree),
        f"E_W has rank {e_w.rank_EW} and degree {e_w.deg_EW}"))

    return ButlerAudit(diag, maximal, destabilizing, image_degree, tuple(checks))
