"""Hyperelliptic pullback systems (H^{2n+1}, V) with dim V = 3.

H is the hyperelliptic line bundle of a genus-g curve C, a double cover
pi: C -> P^1 with H = pi^* O(1).  While 3n + 1 <= g - 1, pulling back is an
isomorphism H^0(P^1, O(m)) -> H^0(C, H^m) for every m used here, so each
computation happens on the base P^1: V = pi^* Vbar for a 3-dimensional Vbar
of binary forms of degree 2n + 1.  The curve itself is never built.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Sequence

from src.coherent.numerical import NumericalSystem, pullback_numeric
from src.coherent.system import CoherentSystemP1, dual_span, random_system
from src.core.errors import CertificationError, DependentSectionsError
from src.core.fields import FieldSpec, format_rational
from src.core.forms import BinaryForm
from src.numerology.rows import Audit, Cmp, RowBuilder
from src.sheaves import linalg
from src.sheaves.bundle_map import BundleMap, forms_to_vector, graded_piece, vector_to_forms
from src.sheaves.kernel import kernel_h0
from src.sheaves.splitting import SplittingType
from src.stability.certificates import (
    NumericCertificate,
    Relation,
    StabilityVerdict,
    VerdictKind,
    pullback_certificate,
)
from src.stability.config import StabilityConfig
from src.stability.grassmann import GrassmannEnumerator
from src.stability.linear import certificate_for, linstab_exhaustive, reduced_slope
from src.utils.seeding import rng_for, sub_seed

log = logging.getLogger(__name__)

STATED_SECTIONS = 2
MISPRINT_NOTE = (
    "the result is stated for type (1, 4n+2, 2) but the construction uses dim V = 3; "
    "suspected misprint, reported as stated"
)


@dataclass(frozen=True)
class HyperellipticModel:
    """Genus g and twist n with n >= 2 and 3n + 1 <= g - 1."""

    g: int
    n: int
    cover_degree: ClassVar[int] = 2

    def __post_init__(self) -> None:
        if self.g < 7:
            raise ValueError(f"needs genus g >= 7, got {self.g}")
        if self.n < 2:
            raise ValueError(f"needs n >= 2, got {self.n}")
        if 3 * self.n + 1 > self.g - 1:
            raise ValueError(
                f"needs 3n + 1 <= g - 1, got 3*{self.n} + 1 = {3 * self.n + 1} > {self.g - 1}"
            )

    @property
    def line_degree(self) -> int:
        return 2 * self.n + 1

    @property
    def base_bundle(self) -> SplittingType:
        return SplittingType([self.line_degree])

    @property
    def base_numeric(self) -> NumericalSystem:
        return NumericalSystem(r=1, d=self.line_degree, n=3, g=0)

    def to_dict(self) -> dict:
        return {"g": self.g, "n": self.n, "cover_degree": self.cover_degree}


def h0_Hm(g: int, m: int) -> int:
    """h^0(C, H^m) = m + 1 while every section is pulled back from P^1."""
    if not 0 <= m <= g - 1:
        raise ValueError(f"H^{m} is outside 0..g-1 = 0..{g - 1}; the count is not claimed there")
    return m + 1


@dataclass(frozen=True)
class PullbackSeries:
    """(O(2n+1), Vbar) on P^1 and the numerical type of its pullback to C."""

    model: HyperellipticModel
    base_system: CoherentSystemP1

    def __post_init__(self) -> None:
        if self.base_system.bundle != self.model.base_bundle:
            raise ValueError(
                f"base bundle {self.base_system.bundle.to_text()} "
                f"is not O({self.model.line_degree})"
            )
        if self.base_system.n != 3:
            raise ValueError(f"Vbar must be 3-dimensional, got {self.base_system.n}")

    @property
    def base_numeric(self) -> NumericalSystem:
        return self.model.base_numeric

    @property
    def lifted(self) -> NumericalSystem:
        return pullback_numeric(self.base_numeric, self.model.cover_degree,
                                cover_genus=self.model.g)


# ── Multiplication map ────────────────────────────────────────────────


@dataclass(frozen=True)
class MultMapKernel:
    domain_dim: int
    codomain_dim: int
    basis: tuple[tuple[BinaryForm, ...], ...]   # syzygies a_1 v_1 + a_2 v_2 + a_3 v_3 = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_dict(self) -> dict:
        return {
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "dimension": self.dimension,
            "basis": [[f.to_text() for f in syz] for syz in self.basis],
        }


def mult_map_kernel(model: HyperellipticModel, vbar: Sequence[BinaryForm]) -> MultMapKernel:
    """Kernel of Vbar (x) H^0(O(n)) -> H^0(O(3n + 1))."""
    if len(vbar) != 3:
        raise ValueError(f"Vbar must have 3 forms, got {len(vbar)}")
    fs = vbar[0].field
    line = model.base_bundle
    for f in vbar:
        if not f.is_zero and f.degree != model.line_degree:
            raise ValueError(f"form of degree {f.degree} in Vbar, expected {model.line_degree}")
    vectors = [forms_to_vector([f], line) for f in vbar]
    if linalg.rank(vectors, line.h0(), fs) < 3:
        raise DependentSectionsError("the three forms of Vbar are linearly dependent")

    bmap = BundleMap.from_columns(SplittingType.trivial(3), line, [[f] for f in vbar], fs)
    n = model.n
    domain = 3 * (n + 1)
    codomain = 3 * n + 2
    null = linalg.nullspace(graded_piece(bmap, n), domain, fs)
    if len(null) < domain - codomain:
        raise CertificationError(f"kernel of dimension {len(null)} below {domain - codomain}")
    basis = tuple(tuple(vector_to_forms(v, bmap.source, n, fs)) for v in null)
    return MultMapKernel(domain, codomain, basis)


def random_vbar(model: HyperellipticModel, fs: FieldSpec, seed: int, index: int = 0,
                coeff_bound: int = 9) -> list[BinaryForm]:
    rng = rng_for(seed, "mult-map", index)
    deg = model.line_degree
    return [BinaryForm.from_coeffs(fs, [fs.random_scalar(rng, coeff_bound) for _ in range(deg + 1)])
            for _ in range(3)]


# ── Destabilizing subsheaf ────────────────────────────────────────────


@dataclass(frozen=True)
class DestabilizerRecord:
    n: int
    mu_sub: Fraction          # mu(H^{-n})
    dsb_rank: int
    dsb_degree: int

    @property
    def mu_dsb(self) -> Fraction:
        return Fraction(self.dsb_degree, self.dsb_rank)

    @property
    def gap(self) -> Fraction:
        return self.mu_sub - self.mu_dsb

    @property
    def not_semistable(self) -> bool:
        return self.mu_sub > self.mu_dsb

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mu_sub": format_rational(self.mu_sub),
            "mu_dsb": format_rational(self.mu_dsb),
            "gap": format_rational(self.gap),
            "not_semistable": self.not_semistable,
        }


def destabilizer_check(model: HyperellipticModel) -> DestabilizerRecord:
    n = model.n
    return DestabilizerRecord(n=n, mu_sub=Fraction(-2 * n), dsb_rank=2,
                              dsb_degree=-model.cover_degree * model.line_degree)


# ── End-to-end pipeline ───────────────────────────────────────────────


def dimension_ledger(model: HyperellipticModel) -> Audit:
    g, n = model.g, model.n
    b = RowBuilder({"g": g, "n": n})
    b.add("constraint", 3 * n + 1, g - 1, Cmp.LE, "3n + 1 <= g - 1")
    b.add("line_degree_at_least_5", model.line_degree, 5, Cmp.GE, "2n + 1 >= 5")
    b.add("h0_line", h0_Hm(g, 2 * n + 1), 2 * n + 2, Cmp.EQ, "h0(H^{2n+1})")
    b.add("h0_twist", h0_Hm(g, n), n + 1, Cmp.EQ, "h0(H^n)")
    b.add("h0_product", h0_Hm(g, 3 * n + 1), 3 * n + 2, Cmp.EQ, "h0(H^{3n+1})")
    b.add("domain_dim", 3 * h0_Hm(g, n), 3 * (n + 1), Cmp.EQ, "dim V * h0(H^n)")
    b.add("domain_exceeds_codomain", 3 * (n + 1), 3 * n + 2, Cmp.GT, "kernel is nonzero")
    record = destabilizer_check(model)
    b.add("dsb_degree", record.dsb_degree, -(4 * n + 2), Cmp.EQ, "rank 2, degree -(4n + 2)")
    b.add("dsb_slope", record.mu_dsb, -(2 * n + 1), Cmp.EQ)
    b.add("destabilizer", record.mu_sub, record.mu_dsb, Cmp.GT, "mu(H^{-n}) > mu(M)")
    b.add("destabilizer_gap", record.gap, 1, Cmp.EQ)
    b.add("stated_section_count", STATED_SECTIONS, 3, Cmp.EQ, MISPRINT_NOTE, discrepancy=True)
    return b.build("thm-4.3-ledger")


@dataclass(frozen=True)
class HyperellipticReport:
    model: HyperellipticModel
    p: int
    seed: int
    ledger: Audit
    rational_kernel_dims: tuple[int, ...]
    rejected_rational_draws: int
    witness_index: int | None
    witness: CoherentSystemP1 | None
    witness_verdict: StabilityVerdict | None
    attempts: int
    base_dsb: SplittingType | None
    lifted_type: tuple[int, int, int]
    lifted_certificates: int
    pullback_preserved: bool
    destabilizer: DestabilizerRecord
    notes: tuple[str, ...]

    @property
    def witness_found(self) -> bool:
        return self.witness is not None

    @property
    def expected_kernel_dim(self) -> int:
        """3(n + 1) - (3n + 2): the kernel dimension of a general Vbar."""
        return 3 * (self.model.n + 1) - h0_Hm(self.model.g, 3 * self.model.n + 1)

    @property
    def generic_kernel_count(self) -> int:
        return sum(k == self.expected_kernel_dim for k in self.rational_kernel_dims)

    @property
    def kernels_ok(self) -> bool:
        """Every kernel is nonzero, and at least nine in ten have the general dimension."""
        dims = self.rational_kernel_dims
        return all(k >= 1 for k in dims) and 10 * self.generic_kernel_count >= 9 * len(dims)

    @property
    def passed(self) -> bool:
        return (self.ledger.passed and self.kernels_ok and self.witness_found
                and self.pullback_preserved and self.destabilizer.not_semistable)

    @property
    def status(self) -> str:
        if not (self.ledger.passed and self.kernels_ok and self.pullback_preserved):
            return "fail"
        return "pass" if self.witness_found else "no-witness"

    def to_dict(self) -> dict:
        fs = FieldSpec.prime(self.p)
        return {
            "model": self.model.to_dict(),
            "prime": self.p,
            "seed": self.seed,
            "status": self.status,
            "ledger": self.ledger.to_dict(),
            "rational_kernel_dims": list(self.rational_kernel_dims),
            "generic_kernel_count": self.generic_kernel_count,
            "rejected_rational_draws": self.rejected_rational_draws,
            "witness": None if self.witness is None else {
                "index": self.witness_index,
                "system": self.witness.to_dict(),
                "verdict": self.witness_verdict.to_dict(fs),
                "dual_span": None if self.base_dsb is None else list(self.base_dsb.degrees),
            },
            "attempts": self.attempts,
            "stated_type": [1, 4 * self.model.n + 2, STATED_SECTIONS],
            "lifted_type": list(self.lifted_type),
            "lifted_certificates": self.lifted_certificates,
            "pullback_preserved": self.pullback_preserved,
            "destabilizer": self.destabilizer.to_dict(),
            "notes": list(self.notes),
        }


def _lift_certificates(sys: CoherentSystemP1, k: int) -> tuple[int, bool]:
    """Pull back every nontrivial 2-dimensional W and compare both relations."""
    rhs = reduced_slope(sys)
    count = 0
    preserved = True
    for basis in GrassmannEnumerator(sys.n, 2, sys.field.p):
        cert = certificate_for(sys, basis, rhs)
        if cert is None:
            continue
        base: NumericCertificate = cert.numeric(sys.n, sys.r, sys.d)
        lifted = pullback_certificate(base, k)
        count += 1
        if lifted.relation != base.relation or lifted.relation != Relation.GT:
            preserved = False
    return count, preserved


def hyperelliptic_pipeline(
    model: HyperellipticModel,
    p: int,
    seed: int = 0,
    samples: int = 20,
    rational_samples: int = 10,
    config: StabilityConfig | None = None,
) -> HyperellipticReport:
    """Ledger, rational kernels, a linearly stable GF(p) witness, and its pullback."""
    config = config or StabilityConfig()
    ledger = dimension_ledger(model)

    qq = FieldSpec.rationals()
    dims = []
    rejected = 0
    for i in range(rational_samples):
        try:
            dims.append(mult_map_kernel(model, random_vbar(model, qq, seed, i, config.coeff_bound))
                        .dimension)
        except DependentSectionsError:
            rejected += 1
    log.info("rational kernels for n=%d: %s", model.n, dims)

    fs = FieldSpec.prime(p)
    witness = verdict = base_dsb = None
    witness_index = None
    attempts = 0
    for i in range(samples):
        attempts += 1
        sys = random_system(model.base_bundle, 3, sub_seed(seed, "witness", i), fs,
                            require_generated=True, coeff_bound=config.coeff_bound)
        v = linstab_exhaustive(sys, config)
        log.debug("witness candidate %d: %s", i, v.kind.value)
        if v.kind == VerdictKind.STABLE:
            witness, verdict, witness_index = sys, v, i
            break

    notes = [MISPRINT_NOTE]
    lifted = pullback_numeric(model.base_numeric, model.cover_degree, cover_genus=model.g)
    count, preserved = 0, True
    if witness is not None:
        base_dsb = dual_span(witness).splitting
        if kernel_h0(witness.evaluation_map, model.n) == 0:
            raise CertificationError("no O(-n) in the base dual span bundle")
        series = PullbackSeries(model, witness)
        lifted = series.lifted
        count, preserved = _lift_certificates(series.base_system, model.cover_degree)
        log.info("witness %d over GF(%d): dual span %s, %d lifted certificates",
                 witness_index, p, base_dsb.to_text(), count)
    else:
        notes.append(f"no linearly stable Vbar among {samples} samples over GF({p}); "
                     "not a refutation")

    return HyperellipticReport(
        model=model,
        p=p,
        seed=seed,
        ledger=ledger,
        rational_kernel_dims=tuple(dims),
        rejected_rational_draws=rejected,
        witness_index=witness_index,
        witness=witness,
        witness_verdict=verdict,
        attempts=attempts,
        base_dsb=base_dsb,
        lifted_type=lifted.type_tuple,
        lifted_certificates=count,
        pullback_preserved=preserved,
        destabilizer=destabilizer_check(model),
        notes=tuple(notes),
    )
