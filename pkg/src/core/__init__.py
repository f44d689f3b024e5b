from src.core.errors import (
    CertificationError,
    DependentSectionsError,
    FieldMismatchError,
    FormParseError,
    NotGeneratedError,
    NotSaturatedError,
    ResourceGuardError,
    ScenarioError,
    WorkbenchError,
)
from src.core.fields import FieldKind, FieldSpec, Scalar, format_rational
from src.core.forms import BinaryForm, bf_add, bf_divexact, bf_gcd, bf_mul, bf_sum, parse_form

__all__ = [
    "FieldKind", "FieldSpec", "Scalar", "format_rational",
    "BinaryForm", "bf_add", "bf_mul", "bf_sum", "bf_gcd", "bf_divexact", "parse_form",
    "WorkbenchError", "FieldMismatchError", "FormParseError", "DependentSectionsError",
    "NotGeneratedError", "NotSaturatedError", "ResourceGuardError", "CertificationError",
    "ScenarioError",
]
