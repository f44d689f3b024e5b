"""Parameter-grid sweeps over every audit.

Audits come back in a fixed order (audit family, then parameter tuple), so
two sweeps of the same grid produce identical reports.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterator

from src.numerology.audits import (
    bielliptic_audit,
    counterex_dims_audit,
    elliptic_dims_audit,
    exa_one_audit,
    exa_three_audit,
    exa_two_audit,
    gonality_audit,
    rank_two_criterion_audit,
)
from src.numerology.rows import Audit

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    counterex_e: range
    exa_one_r: range
    exa_one_a: range
    exa_two_r: range
    exa_two_g: range
    exa_two_steps: int
    exa_three_max: int


GRIDS: dict[str, GridSpec] = {
    "default": GridSpec(
        counterex_e=range(3, 11),
        exa_one_r=range(1, 5),
        exa_one_a=range(1, 4),
        exa_two_r=range(2, 5),
        exa_two_g=range(1, 5),
        exa_two_steps=6,
        exa_three_max=6,
    ),
    "quick": GridSpec(
        counterex_e=range(3, 5),
        exa_one_r=range(2, 3),
        exa_one_a=range(1, 2),
        exa_two_r=range(2, 3),
        exa_two_g=range(2, 3),
        exa_two_steps=2,
        exa_three_max=3,
    ),
}


@dataclass(frozen=True)
class GridReport:
    grid: str
    audits: tuple[Audit, ...]

    @property
    def total_rows(self) -> int:
        return sum(len(a.rows) for a in self.audits)

    @property
    def passed_rows(self) -> int:
        return sum(r.passed for a in self.audits for r in a.rows)

    @property
    def discrepancy_rows(self) -> int:
        return sum(len(a.discrepancies) for a in self.audits)

    @property
    def unexpected_failures(self) -> int:
        return sum(len(a.unexpected_failures) for a in self.audits)

    @property
    def passed(self) -> bool:
        return self.unexpected_failures == 0

    def census(self) -> dict[str, int]:
        """Failed discrepancy rows per row name."""
        out: dict[str, int] = {}
        for a in self.audits:
            for r in a.discrepancies:
                key = f"{a.name}:{r.name}"
                out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "totals": {
                "audits": len(self.audits),
                "rows": self.total_rows,
                "passed": self.passed_rows,
                "discrepancies": self.discrepancy_rows,
                "unexpected_failures": self.unexpected_failures,
            },
            "discrepancy_census": self.census(),
            "audits": [a.to_dict() for a in self.audits],
        }


def _exa_one_params(spec: GridSpec) -> Iterator[tuple[int, int, int]]:
    for r in spec.exa_one_r:
        for a in spec.exa_one_a:
            for d in range(3 * r + 2 * a + 1, 4 * r + 2 * a):
                yield r, a, d


def _exa_two_params(spec: GridSpec) -> Iterator[tuple[int, int, int, int]]:
    for r in spec.exa_two_r:
        for g in spec.exa_two_g:
            start = max(2 * r * g - r, r * g) + 1
            for d in range(start, start + spec.exa_two_steps):
                for r_prime in range(1, r):
                    if (d * r_prime) % r == 0:
                        yield r, d, g, r_prime


def exa_three_lattice(bound: int) -> Iterator[tuple[int, int, int, int, int, int]]:
    """Every admissible (r, d, n, s, e, m) with all entries at most ``bound``.

    Admissible means n > r, 1 <= s <= r and m > s, with d and e positive.
    Bindings that fail a hypothesis of the audit are still yielded; the audit
    marks them inapplicable.
    """
    for r in range(1, bound + 1):
        for d in range(1, bound + 1):
            for n in range(r + 1, bound + 1):
                for s in range(1, r + 1):
                    for m in range(s + 1, bound + 1):
                        for e in range(1, bound + 1):
                            yield r, d, n, s, e, m


def _exa_three_params(spec: GridSpec) -> Iterator[tuple[int, ...]]:
    return exa_three_lattice(spec.exa_three_max)


def _sweep(name: str, fn: Callable[..., Audit], params: Iterator[tuple]) -> Iterator[Audit]:
    for p in params:
        audit = fn(*p)
        if not audit.passed:
            log.warning("%s%s: unexpected failures %s", name, p,
                        [r.name for r in audit.unexpected_failures])
        yield audit


def run_grid(name: str = "default") -> GridReport:
    """Run every audit over the named grid."""
    if name not in GRIDS:
        raise ValueError(f"unknown grid {name!r}; choose from {sorted(GRIDS)}")
    spec = GRIDS[name]
    audits: list[Audit] = []
    counterex = ((e, t) for e in spec.counterex_e for t in range(1, e + 2))
    audits.extend(_sweep("thm-5.18", counterex_dims_audit, counterex))
    audits.extend(_sweep("exa-5.6", exa_one_audit, _exa_one_params(spec)))
    audits.extend(_sweep("exa-5.8", exa_two_audit, _exa_two_params(spec)))
    audits.extend(_sweep("exa-5.9", exa_three_audit, _exa_three_params(spec)))
    audits.extend(_sweep("prop-5.14", elliptic_dims_audit, ((e,) for e in (2, 3))))
    audits.append(bielliptic_audit())
    audits.append(rank_two_criterion_audit(14, 8))
    audits.append(gonality_audit())
    report = GridReport(name, tuple(audits))
    log.info("grid %s: %d audits, %d rows, %d discrepancies, %d unexpected failures",
             name, len(report.audits), report.total_rows, report.discrepancy_rows,
             report.unexpected_failures)
    return report
