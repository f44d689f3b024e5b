"""Homogeneous binary forms in the coordinates ``s, t`` of P^1.

A form of degree d stores d+1 coefficients for s^d, s^(d-1) t, ..., t^d.
The zero form is canonical: ``degree == -1`` and no coefficients, so two
zero forms always compare equal whatever slot they came from.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import Poly, Rational, Symbol

from src.core.errors import FieldMismatchError, FormParseError
from src.core.fields import FieldSpec, Scalar

log = logging.getLogger(__name__)

_T = Symbol("t")


@dataclass(frozen=True)
class BinaryForm:
    """A homogeneous polynomial in ``s, t`` over an exact field."""

    field: FieldSpec
    degree: int
    coeffs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.degree == -1:
            if self.coeffs:
                raise ValueError("the zero form carries no coefficients")
            return
        if self.degree < 0:
            raise ValueError(f"negative degree {self.degree} for a nonzero form")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )
        if all(c == 0 for c in self.coeffs):
            raise ValueError("all-zero coefficients: use BinaryForm.zero()")

    # ── Constructors ──────────────────────────────────────────────

    @classmethod
    def zero(cls, field: FieldSpec) -> BinaryForm:
        return cls(field, -1, ())

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Iterable) -> BinaryForm:
        """Build a form from raw coefficients; all-zero input gives the canonical zero."""
        cs = tuple(field(c) for c in coeffs)
        if not cs or all(c == 0 for c in cs):
            return cls.zero(field)
        return cls(field, len(cs) - 1, cs)

    @classmethod
    def constant(cls, field: FieldSpec, value) -> BinaryForm:
        return cls.from_coeffs(field, [value])

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, t_power: int, coeff=1) -> BinaryForm:
        """``coeff * s^(degree - t_power) * t^t_power``."""
        if not 0 <= t_power <= degree:
            raise ValueError(f"t-power {t_power} outside 0..{degree}")
        cs = [0] * (degree + 1)
        cs[t_power] = coeff
        return cls.from_coeffs(field, cs)

    # ── Predicates ────────────────────────────────────────────────

    @property
    def is_zero(self) -> bool:
        return self.degree == -1

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def coeff(self, t_power: int) -> Scalar:
        if self.is_zero or not 0 <= t_power <= self.degree:
            return self.field.zero
        return self.coeffs[t_power]

    def padded(self, degree: int) -> tuple[Scalar, ...]:
        """Coefficients as a length-(degree+1) tuple; zero pads to zeros."""
        if self.is_zero:
            return tuple(self.field.zero for _ in range(degree + 1))
        if degree != self.degree:
            raise ValueError(f"form of degree {self.degree} used in a degree-{degree} slot")
        return self.coeffs

    # ── Arithmetic ────────────────────────────────────────────────

    def __add__(self, other: BinaryForm) -> BinaryForm:
        return bf_add(self, other)

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return bf_add(self, other.scale(other.field.neg(other.field.one)))

    def __mul__(self, other: BinaryForm) -> BinaryForm:
        return bf_mul(self, other)

    def __neg__(self) -> BinaryForm:
        return self.scale(self.field.neg(self.field.one))

    def scale(self, c: Scalar) -> BinaryForm:
        if self.is_zero:
            return self
        return BinaryForm.from_coeffs(self.field, (self.field.mul(c, a) for a in self.coeffs))

    def evaluate(self, s: Scalar, t: Scalar) -> Scalar:
        f = self.field
        acc = f.zero
        for k, c in enumerate(self.coeffs):
            term = f.mul(c, f.mul(_power(f, s, self.degree - k), _power(f, t, k)))
            acc = f.add(acc, term)
        return acc

    def monic(self) -> BinaryForm:
        """Scale so the first nonzero coefficient (highest s-power) is 1."""
        if self.is_zero:
            return self
        lead = next(c for c in self.coeffs if c != 0)
        return self.scale(self.field.inv(lead))

    # ── Rendering ─────────────────────────────────────────────────

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        terms: list[str] = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            vars_ = []
            if d - k:
                vars_.append("s" if d - k == 1 else f"s^{d - k}")
            if k:
                vars_.append("t" if k == 1 else f"t^{k}")
            if not vars_:
                body = self.field.format_scalar(mag)
            elif mag == 1:
                body = "*".join(vars_)
            else:
                body = "*".join([self.field.format_scalar(mag), *vars_])
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"BinaryForm({self.to_text()!r}, {self.field.label})"


def _power(field: FieldSpec, x: Scalar, k: int) -> Scalar:
    acc = field.one
    for _ in range(k):
        acc = field.mul(acc, x)
    return acc


def _check_field(a: BinaryForm, b: BinaryForm) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"forms over {a.field.label} and {b.field.label}")


def bf_add(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    _check_field(a, b)
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.degree != b.degree:
        raise ValueError(f"cannot add forms of degrees {a.degree} and {b.degree}")
    f = a.field
    return BinaryForm.from_coeffs(f, (f.add(x, y) for x, y in zip(a.coeffs, b.coeffs)))


def bf_mul(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    """Product of two forms; the zero form absorbs."""
    _check_field(a, b)
    if a.is_zero or b.is_zero:
        return BinaryForm.zero(a.field)
    f = a.field
    out = [f.zero] * (a.degree + b.degree + 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            out[i + j] = f.add(out[i + j], f.mul(x, y))
    return BinaryForm.from_coeffs(f, out)


def bf_sum(forms: Iterable[BinaryForm], field: FieldSpec) -> BinaryForm:
    acc = BinaryForm.zero(field)
    for g in forms:
        acc = bf_add(acc, g)
    return acc


# ── gcd and exact division via the affine chart s = 1 ─────────────────
#
# Writing f(1, t) = sum c_k t^k keeps every coefficient; the only thing lost
# is the power of s dividing f, which is d - deg_t f(1, t).


def _s_chart(f: BinaryForm) -> Poly:
    field = f.field
    top_down = [_to_sympy(c, field) for c in reversed(f.coeffs)]
    if field.is_prime:
        return Poly(top_down, _T, modulus=field.p)
    return Poly(top_down, _T, domain="QQ")


def _to_sympy(c: Scalar, field: FieldSpec):
    if field.is_prime:
        return int(c)
    c = Fraction(c)
    return Rational(c.numerator, c.denominator)


def _from_chart(poly: Poly, s_power: int, field: FieldSpec) -> BinaryForm:
    low_up = [field(_rational(c)) for c in reversed(poly.all_coeffs())]
    return BinaryForm.from_coeffs(field, low_up + [0] * s_power)


def _rational(c) -> Fraction:
    c = Rational(c)
    return Fraction(int(c.p), int(c.q))


def _s_multiplicity(f: BinaryForm) -> int:
    last = max(k for k, c in enumerate(f.coeffs) if c != 0)
    return f.degree - last


def bf_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic gcd of a list of forms; a constant result means no common zero on P^1."""
    nonzero = [g for g in forms if not g.is_zero]
    if not nonzero:
        raise ValueError("gcd of an all-zero list is undefined")
    field = nonzero[0].field
    for g in nonzero[1:]:
        _check_field(nonzero[0], g)
    s_power = min(_s_multiplicity(g) for g in nonzero)
    acc = _s_chart(nonzero[0])
    for g in nonzero[1:]:
        if acc.degree() <= 0:
            break
        # sympy clears denominators and works on primitive integer parts over QQ.
        acc = acc.gcd(_s_chart(g))
    result = _from_chart(acc.monic(), s_power, field).monic()
    log.debug("gcd of %d forms has degree %d", len(nonzero), result.degree)
    return result


def bf_divexact(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    """Quotient a / b, raising if b does not divide a."""
    _check_field(a, b)
    if b.is_zero:
        raise ZeroDivisionError("division by the zero form")
    if a.is_zero:
        return a
    if b.degree > a.degree:
        raise ValueError(f"degree {b.degree} form cannot divide degree {a.degree} form")
    q, r = _s_chart(a).div(_s_chart(b))
    if not r.is_zero:
        raise ValueError(f"{b.to_text()} does not divide {a.to_text()}")
    low_up = [a.field(_rational(c)) for c in reversed(q.all_coeffs())]
    want = a.degree - b.degree + 1
    if len(low_up) > want:
        # the chart quotient exists but the power of s in b exceeds that of a
        raise ValueError(f"{b.to_text()} does not divide {a.to_text()}")
    low_up += [0] * (want - len(low_up))
    return BinaryForm.from_coeffs(a.field, low_up)


# ── Parser for scenario strings such as ``3*s^2*t - t^3`` ─────────────

_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?P<coef>\d+(?:/\d+)?)?\s*"
    r"(?P<rest>(?:\*?\s*[st](?:\s*\^\s*\d+)?\s*)*)"
)
_FACTOR_RE = re.compile(r"\*?\s*(?P<var>[st])(?:\s*\^\s*(?P<exp>\d+))?\s*")


def parse_form(text: str, field: FieldSpec, degree: int | None = None) -> BinaryForm:
    """Parse a binary form; every term must share one degree (and match ``degree`` if given)."""
    src = text.strip()
    if not src:
        raise FormParseError("empty form", column=1)
    pos = 0
    terms: dict[int, Scalar] = {}
    term_degree: int | None = None
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if m is None or m.end() == pos:
            raise FormParseError(f"unexpected character {src[pos]!r}", column=pos + 1)
        if not first and m.group("sign") is None:
            raise FormParseError("expected '+' or '-' between terms", column=pos + 1)
        if m.group("coef") is None and not m.group("rest").strip():
            raise FormParseError("empty term", column=pos + 1)
        coef = Fraction(m.group("coef") or 1)
        if m.group("sign") == "-":
            coef = -coef
        s_exp = t_exp = 0
        rest = m.group("rest")
        if rest.strip() and m.group("coef") is not None and not rest.lstrip().startswith("*"):
            raise FormParseError("expected '*' after coefficient", column=m.start("rest") + 1)
        for fm in _FACTOR_RE.finditer(rest):
            e = int(fm.group("exp") or 1)
            if fm.group("var") == "s":
                s_exp += e
            else:
                t_exp += e
        deg = s_exp + t_exp
        if term_degree is None:
            term_degree = deg
        elif deg != term_degree:
            raise FormParseError(
                f"inhomogeneous form: term of degree {deg} after degree {term_degree}",
                column=m.start() + 1,
            )
        terms[t_exp] = field.add(terms.get(t_exp, field.zero), field(coef))
        pos = m.end()
        first = False
    assert term_degree is not None
    if all(c == 0 for c in terms.values()):
        return BinaryForm.zero(field)
    if degree is not None and term_degree != degree:
        raise FormParseError(f"form has degree {term_degree}, expected {degree}", column=1)
    coeffs = [terms.get(k, field.zero) for k in range(term_degree + 1)]
    return BinaryForm.from_coeffs(field, coeffs)
