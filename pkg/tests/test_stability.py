"""Tests for slopes, subspace enumeration, linear stability and the (2, d, 4) criterion."""

import itertools
from fractions import Fraction

import pytest

from src.coherent.system import GradedEvaluation, random_system, subsheaf_generated
from src.core.errors import NotGeneratedError, ResourceGuardError
from src.core.fields import FieldSpec
from src.core.forms import parse_form
from src.sheaves.splitting import SplittingType
from src.stability.certificates import (
    Coverage,
    Relation,
    StabilityVerdict,
    VerdictKind,
    pullback_certificate,
    verdict_from_certificates,
)
from src.stability.config import StabilityConfig
from src.stability.criterion import check_2d4_criterion
from src.stability.grassmann import GrassmannEnumerator, gaussian_binomial
from src.stability.linear import (
    certificate_for,
    linstab,
    linstab_exhaustive,
    linstab_sampled,
    reduced_slope,
    vanishing_subspace,
)
from src.stability.slopes import SlopeKind, alpha_small_checks, mu_alpha, slope_stability_p1
from src.utils.seeding import sub_seed
from tests.conftest import complete_series, make_system


@pytest.fixture
def rank_two_system(gf5):
    """A generated system of type (2, 5, 4) over GF(5)."""
    return random_system(SplittingType([2, 3]), 4, sub_seed(0, "sections", 0), gf5,
                         require_generated=True)


class TestSlopes:
    def test_p1_verdicts(self):
        assert slope_stability_p1(SplittingType([4])).kind == SlopeKind.STABLE
        assert slope_stability_p1(SplittingType([-1, -1])).kind == SlopeKind.STRICTLY_SEMISTABLE
        unstable = slope_stability_p1(SplittingType([-3, -4]))
        assert unstable.kind == SlopeKind.UNSTABLE
        assert unstable.destabilizing_degree == -3
        assert not unstable.semistable

    def test_mu_alpha(self):
        assert mu_alpha(2, 5, 4, Fraction(1, 2)) == Fraction(7, 2)
        with pytest.raises(ValueError):
            mu_alpha(2, 5, 4, -1)

    def test_alpha_small(self):
        assert alpha_small_checks(SplittingType([3])).alpha_stable_near_zero is True
        assert alpha_small_checks(SplittingType([3, 4])).alpha_semistable_near_zero is False
        assert alpha_small_checks(SplittingType([2, 2])).alpha_stable_near_zero is None


class TestGrassmann:
    def test_gaussian_binomial(self):
        assert [gaussian_binomial(4, w, 5) for w in range(5)] == [1, 156, 806, 156, 1]
        assert sum(gaussian_binomial(4, w, 5) for w in range(1, 4)) == 1118
        assert gaussian_binomial(4, 2, 2) == 35

    def test_enumeration_matches_count(self):
        enum = GrassmannEnumerator(4, 2, 3)
        reps = list(enum)
        assert len(reps) == len(set(reps)) == gaussian_binomial(4, 2, 3)

    def test_chunks_cover_disjointly(self):
        enum = GrassmannEnumerator(4, 2, 3)
        pieces = [b for lo, hi in enum.chunks(17) for b in enum.iter_range(lo, hi)]
        assert pieces == list(enum)

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            GrassmannEnumerator(3, 4, 2)
        with pytest.raises(ValueError):
            GrassmannEnumerator(3, 1, 4)


class TestExhaustive:
    def test_complete_cubic_over_gf2(self, gf2):
        verdict = linstab_exhaustive(complete_series(3, gf2))
        assert verdict.kind == VerdictKind.STRICTLY_SEMISTABLE
        assert verdict.coverage == Coverage.EXHAUSTIVE
        assert verdict.violations == 0
        assert verdict.equalities > 0
        assert verdict.subspaces_examined == sum(gaussian_binomial(4, w, 2) for w in range(1, 4))

    def test_rank_two_degree_five_is_unstable(self, rank_two_system):
        verdict = linstab_exhaustive(rank_two_system)
        assert verdict.kind == VerdictKind.UNSTABLE
        assert verdict.subspaces_examined == 1118
        assert all(c.lhs <= 2 for c in verdict.certificates if c.is_violation)
        assert verdict.certificates[0].is_violation

    @pytest.mark.parametrize("bundle,n,p", [("O(2) + O(3)", 4, 5), ("O(3) + O(4)", 4, 3),
                                            ("O(5)", 3, 7), ("O(1) + O(1) + O(2)", 5, 2)])
    def test_graded_screen_matches_exact_subsheaf(self, bundle, n, p):
        fs = FieldSpec.prime(p)
        sys = random_system(SplittingType.parse(bundle), n, sub_seed(3, "sections", 0), fs,
                            require_generated=True)
        graded = GradedEvaluation(sys)
        for w in range(1, n + 1):
            for basis in itertools.islice(GrassmannEnumerator(n, w, p), 60):
                exact = subsheaf_generated(sys, basis)
                screened = graded.image_data(basis)
                assert (screened.rank, screened.degree) == (exact.rank_EW, exact.deg_EW)

    def test_graded_screen_needs_prime_field(self, qq):
        with pytest.raises(ValueError):
            GradedEvaluation(complete_series(3, qq))

    def test_worker_count_does_not_change_verdict(self, gf2):
        sys = complete_series(3, gf2)
        serial = linstab_exhaustive(sys, StabilityConfig(chunk_size=4))
        parallel = linstab_exhaustive(sys, StabilityConfig(chunk_size=4, max_workers=2))
        assert serial == parallel

    def test_guards(self, gf5, qq, rank_two_system):
        with pytest.raises(ResourceGuardError):
            linstab_exhaustive(rank_two_system, StabilityConfig(max_prime=3))
        with pytest.raises(ValueError):
            linstab_exhaustive(complete_series(3, qq))
        with pytest.raises(NotGeneratedError):
            linstab_exhaustive(make_system("O(3)", [["s^3"], ["s^2*t"], ["s*t^2"]], gf5))

    def test_reduced_slope_needs_more_sections(self, qq):
        with pytest.raises(ValueError):
            reduced_slope(make_system("O(1) + O(2)", [["t^2", "s"], ["s^2", "t"]], qq))


class TestSampled:
    def test_rationals_give_evidence_only(self, qq):
        verdict = linstab(complete_series(3, qq), seed=1, samples=20)
        assert verdict.coverage == Coverage.SAMPLED
        assert verdict.kind == VerdictKind.EVIDENCE_ONLY
        assert verdict.violations == 0
        assert verdict.equalities > 0

    def test_seed_reproducible(self, qq):
        sys = complete_series(4, qq)
        assert linstab_sampled(sys, 15, seed=3) == linstab_sampled(sys, 15, seed=3)

    def test_vanishing_subspace(self, qq):
        sys = complete_series(3, qq)
        assert len(vanishing_subspace(sys, parse_form("s", qq))) == 3


class TestCertificates:
    def test_unstable_needs_violation(self):
        with pytest.raises(ValueError):
            StabilityVerdict(VerdictKind.UNSTABLE, Coverage.SAMPLED)

    def test_merge_never_upgrades(self, gf2):
        exact = linstab_exhaustive(complete_series(3, gf2))
        empty = verdict_from_certificates([], Coverage.SAMPLED, 0, 0)
        merged = exact.merge(empty)
        assert merged.kind == VerdictKind.STRICTLY_SEMISTABLE
        assert merged.coverage == Coverage.EXHAUSTIVE

    def test_pullback_preserves_relations(self, rank_two_system):
        sys = rank_two_system
        rhs = reduced_slope(sys)
        certs = []
        for w in (2, 3):
            for basis in GrassmannEnumerator(sys.n, w, 5):
                cert = certificate_for(sys, basis, rhs)
                if cert is not None:
                    certs.append(cert)
                if len(certs) == 50:
                    break
            if len(certs) == 50:
                break
        assert len(certs) == 50
        for cert in certs:
            numeric = cert.numeric(sys.n, sys.r, sys.d)
            assert numeric.relation == cert.relation
            for k in (2, 3, 7):
                assert pullback_certificate(numeric, k).relation == cert.relation

    def test_certificate_dict(self, gf2):
        sys = complete_series(3, gf2)
        cert = certificate_for(sys, [[1, 0, 0, 0], [0, 1, 0, 0]], reduced_slope(sys))
        assert cert.relation == Relation.EQ
        payload = cert.to_dict(gf2)
        assert payload["dim_W"] == 2
        assert payload["subsheaf"]["deg_EW"] == 1
        assert (payload["lhs"], payload["rhs"], payload["relation"]) == ("1", "1", "=")


class TestCriterion:
    def test_consistent_and_unstable(self, rank_two_system):
        report = check_2d4_criterion(rank_two_system, d3=3)
        assert report.hypothesis_holds
        assert report.consistent
        assert report.verdict.kind == VerdictKind.UNSTABLE
        assert report.dsb_verdict.kind == SlopeKind.UNSTABLE

    def test_hypothesis_fails(self, rank_two_system):
        report = check_2d4_criterion(rank_two_system, d3=2)
        assert not report.hypothesis_holds
        assert report.consistent

    def test_wrong_type(self, qq):
        with pytest.raises(ValueError):
            check_2d4_criterion(complete_series(3, qq), d3=2)
