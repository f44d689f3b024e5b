"""Tests for exact fields and binary forms."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import FieldMismatchError, FormParseError
from src.core.fields import FieldSpec, format_rational
from src.core.forms import BinaryForm, bf_divexact, bf_gcd, bf_mul, parse_form

GF7 = FieldSpec.prime(7)
QQ = FieldSpec.rationals()


def forms(field: FieldSpec, max_degree: int = 4):
    """Nonzero binary forms over ``field``."""
    if field.is_prime:
        coeff = st.integers(0, field.p - 1)
    else:
        coeff = st.fractions(min_value=-20, max_value=20, max_denominator=5)
    return (
        st.integers(0, max_degree)
        .flatmap(lambda d: st.lists(coeff, min_size=d + 1, max_size=d + 1))
        .map(lambda cs: BinaryForm.from_coeffs(field, cs))
        .filter(lambda f: not f.is_zero)
    )


class TestFieldSpec:
    def test_parse(self):
        assert FieldSpec.parse("GF(5)").p == 5
        assert FieldSpec.parse("GF5") == FieldSpec.prime(5)
        assert FieldSpec.parse("prime:13").label == "GF(13)"
        assert not FieldSpec.parse("QQ").is_prime

    def test_rejects_composite_modulus(self):
        with pytest.raises(ValueError):
            FieldSpec.parse("GF(4)")

    def test_rejects_garbage(self):
        with pytest.raises(ValueError, match="unrecognised field"):
            FieldSpec.parse("RR")

    def test_coerce_fraction_mod_p(self, gf5):
        assert gf5(Fraction(1, 2)) == 3
        assert gf5("-1") == 4

    def test_format_rational(self):
        assert format_rational(Fraction(-3, 4)) == "-3/4"
        assert format_rational(Fraction(6, 3)) == "2"
        assert format_rational(7) == "7"

    @given(st.integers(1, 6), st.integers(1, 6))
    def test_gf7_inverse(self, a, b):
        assert GF7.mul(a, GF7.inv(a)) == 1
        assert GF7.div(GF7.mul(a, b), b) == a

    @given(st.fractions(), st.fractions().filter(lambda x: x != 0))
    def test_qq_division(self, a, b):
        assert QQ.mul(QQ.div(a, b), b) == a


class TestBinaryForm:
    def test_coefficient_order(self, qq):
        f = parse_form("3*s^2*t - t^3", qq)
        assert f.degree == 3
        assert f.coeffs == (0, 3, 0, -1)

    def test_zero_is_canonical(self, qq):
        assert BinaryForm.from_coeffs(qq, [0, 0, 0]) == BinaryForm.zero(qq)
        assert BinaryForm.zero(qq).degree == -1
        assert parse_form("0", qq).is_zero

    def test_all_zero_constructor_rejected(self, qq):
        with pytest.raises(ValueError):
            BinaryForm(qq, 1, (0, 0))

    def test_evaluate(self, qq):
        f = parse_form("s^2 - t^2", qq)
        assert f.evaluate(1, 1) == 0
        assert f.evaluate(2, 1) == 3

    def test_to_text(self, qq):
        assert parse_form("2*s*t - t^2", qq).to_text() == "2*s*t - t^2"
        assert parse_form("-s", qq).to_text() == "-s"

    def test_mixed_fields(self, qq, gf5):
        with pytest.raises(FieldMismatchError):
            parse_form("s", qq) * parse_form("s", gf5)

    def test_add_requires_equal_degree(self, qq):
        with pytest.raises(ValueError):
            parse_form("s", qq) + parse_form("s^2", qq)


class TestParser:
    def test_inhomogeneous_rejected(self, qq):
        with pytest.raises(FormParseError, match="inhomogeneous"):
            parse_form("s^2 + t", qq)

    def test_declared_degree(self, qq):
        with pytest.raises(FormParseError, match="expected 3"):
            parse_form("s^2", qq, degree=3)

    def test_missing_star_reports_column(self, qq):
        with pytest.raises(FormParseError) as exc:
            parse_form("s^2 + 3 t^2", qq)
        assert exc.value.column == 9

    def test_rational_coefficients(self, qq):
        assert parse_form("1/2*s + t", qq).coeffs == (Fraction(1, 2), 1)

    def test_reduces_mod_p(self, gf5):
        assert parse_form("7*s - t", gf5).coeffs == (2, 4)

    def test_empty(self, qq):
        with pytest.raises(FormParseError):
            parse_form("  ", qq)


class TestGcdAndDivision:
    def test_gcd_of_difference_of_squares(self, qq):
        g = bf_gcd([parse_form("s^2 - t^2", qq), parse_form("s - t", qq)])
        assert g == parse_form("s - t", qq)

    def test_gcd_keeps_power_of_s(self, qq):
        assert bf_gcd([parse_form("s*t", qq), parse_form("s^2", qq)]) == parse_form("s", qq)

    def test_coprime(self, qq):
        assert bf_gcd([parse_form("s", qq), parse_form("t", qq)]).degree == 0

    def test_gcd_of_zeros(self, qq):
        with pytest.raises(ValueError):
            bf_gcd([BinaryForm.zero(qq)])

    def test_divexact(self, qq):
        q = bf_divexact(parse_form("s^2 - t^2", qq), parse_form("s - t", qq))
        assert q == parse_form("s + t", qq)

    def test_divexact_rejects_non_divisor(self, qq):
        with pytest.raises(ValueError):
            bf_divexact(parse_form("s^2 + t^2", qq), parse_form("s - t", qq))

    def test_divexact_rejects_excess_power_of_s(self, qq):
        with pytest.raises(ValueError):
            bf_divexact(parse_form("s*t", qq), parse_form("s^2", qq))


class TestFormProperties:
    @given(forms(GF7), forms(GF7))
    def test_product_degree_adds(self, a, b):
        assert bf_mul(a, b).degree == a.degree + b.degree
        assert bf_mul(a, b) == bf_mul(b, a)

    @given(forms(GF7), forms(GF7))
    def test_product_divides_back(self, a, b):
        assert bf_divexact(bf_mul(a, b), b) == a

    @given(forms(QQ), forms(QQ))
    def test_gcd_divides_both(self, a, b):
        g = bf_gcd([a, b])
        bf_divexact(a, g)
        bf_divexact(b, g)

    @given(forms(QQ, max_degree=5))
    def test_text_reparses(self, f):
        assert parse_form(f.to_text(), QQ, degree=f.degree) == f
