from src.stability.certificates import (
    Coverage,
    LinStabCertificate,
    NumericCertificate,
    Relation,
    StabilityVerdict,
    VerdictKind,
    pullback_certificate,
)
from src.stability.config import StabilityConfig
from src.stability.criterion import CriterionReport, check_2d4_criterion
from src.stability.grassmann import GrassmannEnumerator, gaussian_binomial
from src.stability.linear import (
    linstab,
    linstab_check_one,
    linstab_exhaustive,
    linstab_sampled,
    vanishing_subspace,
)
from src.stability.slopes import (
    AlphaSmallReport,
    SlopeKind,
    SlopeVerdict,
    alpha_small_checks,
    mu_alpha,
    slope,
    slope_stability_p1,
)

__all__ = [
    "slope", "mu_alpha", "slope_stability_p1", "alpha_small_checks",
    "SlopeKind", "SlopeVerdict", "AlphaSmallReport",
    "Relation", "VerdictKind", "Coverage",
    "LinStabCertificate", "NumericCertificate", "StabilityVerdict", "pullback_certificate",
    "StabilityConfig", "GrassmannEnumerator", "gaussian_binomial",
    "linstab", "linstab_check_one", "linstab_exhaustive", "linstab_sampled",
    "vanishing_subspace", "check_2d4_criterion", "CriterionReport",
]
