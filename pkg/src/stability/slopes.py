"""Slopes, alpha-slopes, and slope stability of split bundles on P^1."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from src.sheaves.splitting import SplittingType


def slope(r: int, d: int) -> Fraction:
    if r == 0:
        raise ValueError("slope of a rank-0 object is undefined")
    return Fraction(d, r)


def mu_alpha(r: int, d: int, n: int, alpha: Fraction | int) -> Fraction:
    """(d + alpha * n) / r."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if r == 0:
        raise ValueError("alpha-slope of a rank-0 object is undefined")
    return (d + alpha * n) / r


class SlopeKind(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class SlopeVerdict:
    kind: SlopeKind
    bundle: SplittingType
    destabilizing_degree: int | None = None

    @property
    def semistable(self) -> bool:
        return self.kind != SlopeKind.UNSTABLE

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "bundle": list(self.bundle.degrees),
            "destabilizing_summand": self.destabilizing_degree,
        }


def slope_stability_p1(bundle: SplittingType) -> SlopeVerdict:
    """Every bundle on P^1 splits, so stability is read off the twists.

    Semistable iff all twists agree; stable iff in addition the rank is one.
    Otherwise the largest summand has slope above the bundle's.
    """
    if bundle.is_empty:
        raise ValueError("the zero bundle has no stability")
    if bundle.rank == 1:
        return SlopeVerdict(SlopeKind.STABLE, bundle)
    if len(set(bundle.degrees)) == 1:
        return SlopeVerdict(SlopeKind.STRICTLY_SEMISTABLE, bundle)
    return SlopeVerdict(SlopeKind.UNSTABLE, bundle, destabilizing_degree=bundle.degrees[0])


@dataclass(frozen=True)
class AlphaSmallReport:
    """What slope stability of E implies for (E, V) at small positive alpha."""

    bundle_verdict: SlopeVerdict
    alpha_stable_near_zero: bool | None
    alpha_semistable_near_zero: bool | None

    def to_dict(self) -> dict:
        return {
            "bundle_verdict": self.bundle_verdict.to_dict(),
            "alpha_stable_near_zero": self.alpha_stable_near_zero,
            "alpha_semistable_near_zero": self.alpha_semistable_near_zero,
        }


def alpha_small_checks(bundle: SplittingType) -> AlphaSmallReport:
    """E stable forces alpha-stability and E unstable forbids alpha-semistability, for small alpha.

    ``None`` marks the cases the bundle alone does not decide.
    """
    verdict = slope_stability_p1(bundle)
    if verdict.kind == SlopeKind.STABLE:
        return AlphaSmallReport(verdict, True, True)
    if verdict.kind == SlopeKind.UNSTABLE:
        return AlphaSmallReport(verdict, False, False)
    return AlphaSmallReport(verdict, None, None)
