"""Consistency check for systems of type (2, d, 4).

For such a system, linear stability together with d < 2 d_3 forces the dual
span bundle to be stable.  Both sides are computed independently here and
the report states whether they are compatible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from src.coherent.system import CoherentSystemP1, dual_span
from src.stability.certificates import StabilityVerdict, VerdictKind
from src.stability.config import StabilityConfig
from src.stability.linear import linstab
from src.stability.slopes import SlopeKind, SlopeVerdict, slope_stability_p1

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CriterionReport:
    d: int
    d3: int
    hypothesis_holds: bool
    verdict: StabilityVerdict
    dsb_verdict: SlopeVerdict
    consistent: bool
    note: str

    def to_dict(self, sys: CoherentSystemP1) -> dict:
        return {
            "d": self.d,
            "d3": self.d3,
            "hypothesis_d_lt_2d3": self.hypothesis_holds,
            "linear_stability": self.verdict.to_dict(sys.field),
            "dual_span": self.dsb_verdict.to_dict(),
            "consistent": self.consistent,
            "note": self.note,
        }


def check_2d4_criterion(
    sys: CoherentSystemP1,
    d3: int,
    seed: int = 0,
    config: StabilityConfig | None = None,
) -> CriterionReport:
    if (sys.r, sys.n) != (2, 4):
        raise ValueError(f"criterion applies to type (2, d, 4), got {sys.type_tuple}")
    d = sys.d
    hypothesis = d < 2 * d3
    verdict = linstab(sys, seed=seed, config=config)
    dsb = slope_stability_p1(dual_span(sys).splitting)
    dsb_stable = dsb.kind == SlopeKind.STABLE

    if hypothesis and verdict.kind == VerdictKind.STABLE and not dsb_stable:
        consistent = False
        note = "linearly stable with d < 2 d3 but the dual span bundle is not stable"
    elif hypothesis and not dsb_stable and verdict.kind == VerdictKind.EVIDENCE_ONLY:
        consistent = True
        note = "dual span bundle not stable: a violation must exist but none was sampled"
    elif hypothesis and not dsb_stable:
        consistent, note = True, "dual span bundle not stable and linear stability fails"
    elif not hypothesis:
        consistent, note = True, f"hypothesis fails ({d} >= {2 * d3}); no constraint"
    else:
        consistent, note = True, "dual span bundle stable"
    log.info("(2,%d,4) with d3=%d: %s", d, d3, note)
    return CriterionReport(d, d3, hypothesis, verdict, dsb, consistent, note)
