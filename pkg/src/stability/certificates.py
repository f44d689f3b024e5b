"""Linear stability certificates and verdicts.

A certificate records one subspace W with nontrivial E_W and both sides of

    deg(E_W) / (dim W - rk E_W)   versus   d / (n - r).

(E, V) is linearly semistable when the left side is never smaller, and
linearly stable when it is always strictly larger.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from src.coherent.system import SubsheafReport
from src.core.fields import FieldSpec, format_rational


class Relation(str, Enum):
    LT = "<"
    EQ = "="
    GT = ">"

    @classmethod
    def compare(cls, lhs: Fraction, rhs: Fraction) -> Relation:
        if lhs < rhs:
            return cls.LT
        if lhs == rhs:
            return cls.EQ
        return cls.GT


class VerdictKind(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"
    EVIDENCE_ONLY = "evidence-only"


class Coverage(str, Enum):
    EXHAUSTIVE = "exhaustive-GF(p)"
    SAMPLED = "sampled"


_SEVERITY = {
    VerdictKind.UNSTABLE: 0,
    VerdictKind.STRICTLY_SEMISTABLE: 1,
    VerdictKind.EVIDENCE_ONLY: 2,
    VerdictKind.STABLE: 3,
}


@dataclass(frozen=True)
class LinStabCertificate:
    report: SubsheafReport
    lhs: Fraction
    rhs: Fraction

    @property
    def w_basis(self) -> tuple[tuple, ...]:
        return self.report.w_basis

    @property
    def relation(self) -> Relation:
        return Relation.compare(self.lhs, self.rhs)

    @property
    def is_violation(self) -> bool:
        return self.relation == Relation.LT

    @property
    def is_equality(self) -> bool:
        return self.relation == Relation.EQ

    def sort_key(self) -> tuple:
        order = {Relation.LT: 0, Relation.EQ: 1, Relation.GT: 2}[self.relation]
        return order, self.report.dim_w, self.w_basis

    def numeric(self, n: int, r: int, d: int) -> NumericCertificate:
        return NumericCertificate(
            dim_w=self.report.dim_w, rank_EW=self.report.rank_EW, deg_EW=self.report.deg_EW,
            r=r, d=d, n=n,
        )

    def to_dict(self, fs: FieldSpec) -> dict:
        return {
            "dim_W": self.report.dim_w,
            "subsheaf": self.report.to_dict(fs),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "relation": self.relation.value,
        }


@dataclass(frozen=True)
class NumericCertificate:
    """The numbers behind a certificate, detached from any explicit sections."""

    dim_w: int
    rank_EW: int
    deg_EW: int
    r: int
    d: int
    n: int

    @property
    def lhs(self) -> Fraction:
        return Fraction(self.deg_EW, self.dim_w - self.rank_EW)

    @property
    def rhs(self) -> Fraction:
        return Fraction(self.d, self.n - self.r)

    @property
    def relation(self) -> Relation:
        return Relation.compare(self.lhs, self.rhs)


def pullback_certificate(cert: NumericCertificate, k: int) -> NumericCertificate:
    """Pull back along a degree-k cover: both degrees scale by k, dimensions and ranks do not."""
    if k < 1:
        raise ValueError(f"cover degree must be >= 1, got {k}")
    return NumericCertificate(
        dim_w=cert.dim_w, rank_EW=cert.rank_EW, deg_EW=k * cert.deg_EW,
        r=cert.r, d=k * cert.d, n=cert.n,
    )


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a linear stability search, with the certificates that decide it."""

    kind: VerdictKind
    coverage: Coverage
    certificates: tuple[LinStabCertificate, ...] = ()
    subspaces_examined: int = 0
    nontrivial_examined: int = 0
    violations: int = 0
    equalities: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.kind == VerdictKind.UNSTABLE and not any(
            c.is_violation for c in self.certificates
        ):
            raise ValueError("an unstable verdict needs a violation certificate")
        if self.kind == VerdictKind.STRICTLY_SEMISTABLE and (
            self.violations or not any(c.is_equality for c in self.certificates)
        ):
            raise ValueError("a strictly semistable verdict needs equalities and no violations")

    def merge(self, other: StabilityVerdict, keep: int = 50) -> StabilityVerdict:
        """Combine two searches over the same system; never upgrades a verdict."""
        certs = sorted(self.certificates + other.certificates, key=LinStabCertificate.sort_key)
        kind = min(self.kind, other.kind, key=_SEVERITY.__getitem__)
        coverage = (Coverage.EXHAUSTIVE if Coverage.EXHAUSTIVE in (self.coverage, other.coverage)
                    else Coverage.SAMPLED)
        return StabilityVerdict(
            kind=kind,
            coverage=coverage,
            certificates=tuple(_dedupe(certs))[:keep],
            subspaces_examined=self.subspaces_examined + other.subspaces_examined,
            nontrivial_examined=self.nontrivial_examined + other.nontrivial_examined,
            violations=self.violations + other.violations,
            equalities=self.equalities + other.equalities,
            notes=self.notes + other.notes,
        )

    def to_dict(self, fs: FieldSpec) -> dict:
        return {
            "kind": self.kind.value,
            "coverage": self.coverage.value,
            "subspaces_examined": self.subspaces_examined,
            "nontrivial_examined": self.nontrivial_examined,
            "violations": self.violations,
            "equalities": self.equalities,
            "certificates": [c.to_dict(fs) for c in self.certificates],
            "notes": list(self.notes),
        }


def _dedupe(certs: Iterable[LinStabCertificate]) -> list[LinStabCertificate]:
    seen = set()
    out = []
    for c in certs:
        if c.w_basis not in seen:
            seen.add(c.w_basis)
            out.append(c)
    return out


def verdict_from_certificates(
    certs: Iterable[LinStabCertificate],
    coverage: Coverage,
    examined: int,
    nontrivial: int,
    keep: int = 50,
    notes: tuple[str, ...] = (),
) -> StabilityVerdict:
    """Violations make it unstable; otherwise exhaustive sweeps decide and samples only suggest."""
    ordered = sorted(_dedupe(certs), key=LinStabCertificate.sort_key)
    violations = sum(c.is_violation for c in ordered)
    equalities = sum(c.is_equality for c in ordered)
    if violations:
        kind = VerdictKind.UNSTABLE
    elif coverage == Coverage.SAMPLED:
        kind = VerdictKind.EVIDENCE_ONLY
    elif equalities:
        kind = VerdictKind.STRICTLY_SEMISTABLE
    else:
        kind = VerdictKind.STABLE
    kept = [c for c in ordered if c.relation != Relation.GT][:keep]
    return StabilityVerdict(
        kind=kind,
        coverage=coverage,
        certificates=tuple(kept),
        subspaces_examined=examined,
        nontrivial_examined=nontrivial,
        violations=violations,
        equalities=equalities,
        notes=notes,
    )
