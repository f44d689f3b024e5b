"""Exact base fields: the rationals and prime fields GF(p).

Scalars are plain Python values so they pickle cheaply across worker
processes: ``fractions.Fraction`` over the rationals and ``int`` in
``[0, p)`` over GF(p).  Linear algebra converts them into sympy domain
elements on demand (see ``FieldSpec.domain``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator, Union

import numpy as np
from sympy import isprime
from sympy.polys.domains import GF, QQ

Scalar = Union[int, Fraction]

MAX_PRIME = 2**16

_FIELD_RE = re.compile(r"^(?:(?P<q>QQ|rationals|Q)|(?:GF\(|prime:|GF)(?P<p>\d+)\)?)$")


class FieldKind(str, Enum):
    RATIONALS = "rationals"
    PRIME = "prime-field"


@dataclass(frozen=True)
class FieldSpec:
    """A computable base field."""

    kind: FieldKind
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == FieldKind.PRIME:
            if self.p is None or not isprime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p!r}")
            if self.p >= MAX_PRIME:
                raise ValueError(f"prime modulus {self.p} exceeds the supported bound {MAX_PRIME}")
        elif self.p is not None:
            raise ValueError("the rational field takes no modulus")

    # ── Constructors ──────────────────────────────────────────────

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``QQ``, ``GF(5)``, ``GF5`` or ``prime:5``."""
        m = _FIELD_RE.match(text.strip())
        if not m:
            raise ValueError(f"unrecognised field {text!r}; expected QQ or GF(p)")
        if m.group("q"):
            return cls.rationals()
        return cls.prime(int(m.group("p")))

    # ── Introspection ─────────────────────────────────────────────

    @property
    def is_prime(self) -> bool:
        return self.kind == FieldKind.PRIME

    @property
    def label(self) -> str:
        return f"GF({self.p})" if self.is_prime else "QQ"

    def __str__(self) -> str:
        return self.label

    @property
    def domain(self) -> Any:
        """The sympy domain used for DomainMatrix computations."""
        return _domain_for(self.p)

    # ── Scalar arithmetic ─────────────────────────────────────────

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_prime else Fraction(1)

    def __call__(self, value: Any) -> Scalar:
        """Coerce ``value`` (int, Fraction, or ``"a/b"`` string) into a field scalar."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.is_prime:
            if isinstance(value, Fraction):
                return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self.label}")
        return pow(int(a), -1, self.p) if self.is_prime else 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    # ── Domain conversion ─────────────────────────────────────────

    def to_domain(self, a: Scalar) -> Any:
        if self.is_prime:
            return self.domain(int(a))
        return self.domain(a.numerator, a.denominator)

    def from_domain(self, x: Any) -> Scalar:
        if self.is_prime:
            return int(self.domain.to_int(x)) % self.p
        return Fraction(int(x.numerator), int(x.denominator))

    # ── Sampling and enumeration ──────────────────────────────────

    def random_scalar(self, rng: np.random.Generator, bound: int = 9) -> Scalar:
        """Uniform over GF(p); uniform integer in [-bound, bound] over QQ."""
        if self.is_prime:
            return int(rng.integers(0, self.p))
        return Fraction(int(rng.integers(-bound, bound + 1)))

    def elements(self) -> Iterator[Scalar]:
        if not self.is_prime:
            raise ValueError("the rationals cannot be enumerated")
        return iter(range(self.p))

    def format_scalar(self, a: Scalar) -> str:
        """Render a scalar as ``"p/q"`` (or an integer string)."""
        if self.is_prime:
            return str(int(a))
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


@lru_cache(maxsize=None)
def _domain_for(p: int | None) -> Any:
    # Kept out of the instance so FieldSpec stays trivially picklable.
    return QQ if p is None else GF(p, symmetric=False)


def format_rational(x: Fraction | int) -> str:
    """Serialize an exact rational as ``"p/q"``; integers render bare."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
