"""Audit rows: one exact comparison each, with the pass flag derived on demand."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

from src.core.fields import format_rational
from src.stability.certificates import Relation


class Cmp(str, Enum):
    """The comparison a row asserts between its two sides."""

    LT = "<"
    LE = "<="
    EQ = "=="
    GE = ">="
    GT = ">"

    def holds(self, lhs: Fraction, rhs: Fraction) -> bool:
        return _OPS[self](lhs, rhs)


_OPS: dict[Cmp, Callable[[Fraction, Fraction], bool]] = {
    Cmp.LT: operator.lt,
    Cmp.LE: operator.le,
    Cmp.EQ: operator.eq,
    Cmp.GE: operator.ge,
    Cmp.GT: operator.gt,
}


@dataclass(frozen=True)
class AuditRow:
    """lhs <cmp> rhs, exactly.

    ``discrepancy`` marks rows that set a stated value against an independent
    recomputation; their failure is an expected finding, not a bug.
    """

    name: str
    lhs: Fraction
    rhs: Fraction
    expected: Cmp
    params: dict[str, int] = field(default_factory=dict)
    note: str = ""
    discrepancy: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def relation(self) -> Relation:
        return Relation.compare(self.lhs, self.rhs)

    @property
    def passed(self) -> bool:
        return self.expected.holds(self.lhs, self.rhs)

    @property
    def unexpected_failure(self) -> bool:
        return not self.passed and not self.discrepancy

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "expected": self.expected.value,
            "relation": self.relation.value,
            "passed": self.passed,
            "discrepancy": self.discrepancy,
            "note": self.note,
        }


@dataclass(frozen=True)
class Audit:
    """The rows produced by one audit at one parameter binding."""

    name: str
    params: dict[str, int]
    rows: tuple[AuditRow, ...]
    notes: tuple[str, ...] = ()
    applicable: bool = True

    @property
    def passed(self) -> bool:
        return not self.unexpected_failures

    @property
    def discrepancies(self) -> list[AuditRow]:
        return [r for r in self.rows if r.discrepancy and not r.passed]

    @property
    def unexpected_failures(self) -> list[AuditRow]:
        # a failed hypothesis only makes the audit inapplicable
        if not self.applicable:
            return []
        return [r for r in self.rows if r.unexpected_failure]

    def row(self, name: str) -> AuditRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(f"{self.name} has no row {name!r}")

    def has_row(self, name: str) -> bool:
        return any(r.name == name for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "applicable": self.applicable,
            "passed": self.passed,
            "rows": [r.to_dict() for r in self.rows],
            "notes": list(self.notes),
        }


class RowBuilder:
    """Accumulates rows that share one parameter binding."""

    def __init__(self, params: dict[str, int]) -> None:
        self.params = dict(params)
        self.rows: list[AuditRow] = []

    def add(self, name: str, lhs, rhs, expected: Cmp, note: str = "",
            discrepancy: bool = False) -> AuditRow:
        row = AuditRow(name, Fraction(lhs), Fraction(rhs), expected, self.params, note, discrepancy)
        self.rows.append(row)
        return row

    def build(self, audit: str, notes: tuple[str, ...] = (), applicable: bool = True) -> Audit:
        return Audit(audit, self.params, tuple(self.rows), notes, applicable)
