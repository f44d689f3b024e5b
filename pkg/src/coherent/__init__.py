from src.coherent.numerical import NumericalSystem, pullback_numeric
from src.coherent.system import (
    CoherentSystemP1,
    GradedEvaluation,
    SubsheafReport,
    check_image_dichotomy,
    dual_span,
    echelon_subspace,
    is_generated,
    monomial_sections,
    random_system,
    subsheaf_generated,
)

__all__ = [
    "CoherentSystemP1", "SubsheafReport", "NumericalSystem",
    "is_generated", "dual_span", "subsheaf_generated", "echelon_subspace",
    "pullback_numeric", "random_system", "monomial_sections",
    "GradedEvaluation", "check_image_dichotomy",
]
