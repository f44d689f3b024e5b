"""Tests for Butler diagrams and their property audit."""

import pytest

from src.butler.diagram import (
    audit_properties,
    butler_from_subbundle,
    max_slope_subbundle,
    summand_inclusion,
)
from src.coherent.system import dual_span, random_system
from src.core.errors import NotSaturatedError
from src.core.forms import BinaryForm, parse_form
from src.sheaves.bundle_map import BundleMap
from src.sheaves.splitting import SplittingType
from tests.conftest import complete_series, make_system


def _names_passing(audit) -> set[str]:
    return {c.name for c in audit.checks if c.passed}


class TestSummandInclusion:
    def test_columns(self, qq):
        inc = summand_inclusion(SplittingType([-1, -2, -2]), [1, 2], qq)
        assert inc.source == SplittingType([-2, -2])
        assert inc.shape == (3, 2)

    def test_out_of_range(self, qq):
        with pytest.raises(ValueError):
            summand_inclusion(SplittingType([-1]), [1], qq)
        with pytest.raises(ValueError):
            summand_inclusion(SplittingType([-1]), [], qq)


class TestSmallDiagrams:
    def test_pencil(self, qq):
        sys = make_system("O(1)", [["s"], ["t"]], qq)
        diag = butler_from_subbundle(sys, max_slope_subbundle(sys))
        assert diag.s == diag.m == SplittingType([-1])
        assert diag.dim_w == 2
        assert diag.f_s == SplittingType([1])
        audit = audit_properties(diag)
        assert audit.all_passed
        assert audit.maximal_slope and not audit.destabilizing
        assert audit.check("d_rank_iff_degree").passed is None

    def test_one_summand_of_cubic(self, qq):
        sys = complete_series(3, qq)
        m = dual_span(sys).splitting
        diag = butler_from_subbundle(sys, summand_inclusion(m, [0], qq))
        assert diag.s == SplittingType([-1])
        assert diag.dim_w == 2
        assert diag.f_s == SplittingType([1])
        assert diag.image.rank == 1
        audit = audit_properties(diag)
        assert audit.all_passed
        assert audit.image_degree == 1
        assert audit.check("E_W_is_image_of_alpha").passed

    def test_whole_dual_span_of_conic(self, qq):
        sys = complete_series(2, qq)
        diag = butler_from_subbundle(sys, max_slope_subbundle(sys))
        assert diag.s == SplittingType([-1, -1])
        assert diag.dim_w == 3
        assert diag.f_s == SplittingType([2])
        assert (diag.t_data.rank, diag.t_data.degree) == (0, 0)
        assert audit_properties(diag).all_passed

    def test_to_dict(self, qq):
        sys = make_system("O(1)", [["s"], ["t"]], qq)
        payload = audit_properties(butler_from_subbundle(sys, max_slope_subbundle(sys))).to_dict()
        assert payload["diagram"]["S"] == [-1]
        assert payload["diagram"]["F_S"] == [1]
        assert payload["all_passed"] is True
        assert {c["name"] for c in payload["checks"]} >= {"a_W_in_H0_F_S", "numeric_exactness"}


class TestDestabilizingSubbundle:
    @pytest.fixture
    def system(self, gf5):
        return random_system(SplittingType([3, 4]), 4, 5, gf5, require_generated=True)

    def test_top_summand(self, system):
        m = dual_span(system).splitting
        s_map = max_slope_subbundle(system)
        assert s_map.source == SplittingType([m.degrees[0]])

    def test_audit(self, system):
        diag = butler_from_subbundle(system, max_slope_subbundle(system))
        audit = audit_properties(diag)
        if diag.m.degrees[0] != diag.m.degrees[-1]:
            assert audit.destabilizing
            assert audit.check("d_rank_iff_degree").passed is not None
        structural = {"a_W_in_H0_F_S", "b_generated_by_W", "b_h0_dual_vanishes",
                      "c_alpha_nonzero", "numeric_exactness", "S_is_kernel_of_q",
                      "E_W_is_image_of_alpha"}
        assert structural <= _names_passing(audit)
        assert diag.s.rank + diag.f_s.rank == diag.dim_w


class TestRejectedSubbundles:
    def test_wrong_target(self, qq):
        sys = complete_series(3, qq)
        with pytest.raises(ValueError, match="not M"):
            butler_from_subbundle(sys, summand_inclusion(SplittingType([-1, -1]), [0], qq))

    def test_not_injective(self, qq):
        sys = complete_series(2, qq)
        m = dual_span(sys).splitting
        one = BinaryForm.constant(qq, 1)
        zero = BinaryForm.zero(qq)
        s_map = BundleMap.from_columns(m, m, [[one, zero], [one, zero]], qq)
        with pytest.raises(ValueError, match="injective"):
            butler_from_subbundle(sys, s_map)

    def test_not_saturated(self, qq):
        sys = complete_series(3, qq)
        m = dual_span(sys).splitting
        s = parse_form("s", qq)
        s_map = BundleMap.from_columns(SplittingType([-2]), m, [[s, s, BinaryForm.zero(qq)]], qq)
        with pytest.raises(NotSaturatedError) as exc:
            butler_from_subbundle(sys, s_map)
        assert exc.value.defect == 1
