"""Shared fixtures: base fields and small coherent systems."""

import pytest

from src.coherent.system import CoherentSystemP1, monomial_sections
from src.core.fields import FieldSpec
from src.core.forms import parse_form
from src.sheaves.splitting import SplittingType


@pytest.fixture
def qq():
    return FieldSpec.rationals()


@pytest.fixture
def gf2():
    return FieldSpec.prime(2)


@pytest.fixture
def gf5():
    return FieldSpec.prime(5)


def make_system(bundle: str, sections: list[list[str]], fs: FieldSpec) -> CoherentSystemP1:
    """A system from section strings, one form per summand in descending order."""
    e = SplittingType.parse(bundle)
    secs = [[parse_form(f, fs, degree=a) for f, a in zip(sec, e.degrees)] for sec in sections]
    return CoherentSystemP1.from_sections(e, secs, fs)


def complete_series(degree: int, fs: FieldSpec) -> CoherentSystemP1:
    """(O(degree), H^0(O(degree)))."""
    e = SplittingType([degree])
    return CoherentSystemP1.from_sections(e, monomial_sections(e, fs), fs)
