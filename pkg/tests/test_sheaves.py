"""Tests for split bundles, bundle maps, and kernel splitting types."""

import numpy as np
import pytest

from src.core.fields import FieldSpec
from src.core.forms import BinaryForm, parse_form
from src.sheaves import linalg
from src.sheaves.bundle_map import BundleMap, block_sizes, graded_piece
from src.sheaves.kernel import (
    H0Profile,
    full_rank_colength,
    generic_rank,
    image_data,
    is_saturated_inclusion,
    kernel_h0,
    kernel_splitting,
    rank_one_image_degree,
    twist_bounds,
)
from src.sheaves.splitting import SplittingType, cohomology_line

GF101 = FieldSpec.prime(101)


def _row_map(source: str, target: str, rows, fs) -> BundleMap:
    src, tgt = SplittingType.parse(source), SplittingType.parse(target)
    entries = [[parse_form(f, fs) for f in row] for row in rows]
    return BundleMap.from_rows(src, tgt, entries, fs)


def _random_map(rng: np.random.Generator) -> BundleMap:
    target = SplittingType(int(a) for a in rng.integers(0, 5, size=int(rng.integers(1, 4))))
    source = SplittingType(int(c) for c in rng.integers(-1, 1, size=int(rng.integers(1, 7))))
    rows = []
    for a in target.degrees:
        row = []
        for c in source.degrees:
            k = a - c
            coeffs = rng.integers(0, GF101.p, size=k + 1) if k >= 0 else []
            row.append(BinaryForm.from_coeffs(GF101, coeffs))
        rows.append(row)
    return BundleMap.from_rows(source, target, rows, GF101)


class TestSplittingType:
    def test_parse_and_order(self):
        e = SplittingType.parse("O(3) + O(4)")
        assert e.degrees == (4, 3)
        assert SplittingType.parse("3,4") == e

    def test_h0_of_counterexample_bundle(self):
        e = 3
        assert SplittingType([e, e + 1]).h0() == 2 * e + 3

    def test_cohomology_line(self):
        assert cohomology_line(2) == (3, 0)
        assert cohomology_line(-1) == (0, 0)
        assert cohomology_line(-3) == (0, 2)

    def test_dual_and_twist(self):
        e = SplittingType([2, -1])
        assert e.dual().degrees == (1, -2)
        assert e.twist(1).degree == e.degree + 2

    def test_empty_has_no_slope(self):
        with pytest.raises(ValueError):
            _ = SplittingType([]).slope

    def test_bad_text(self):
        with pytest.raises(ValueError):
            SplittingType.parse("O(a)")


class TestBundleMap:
    def test_entry_degree_checked(self, qq):
        with pytest.raises(ValueError, match="expected 1"):
            _row_map("0", "1", [["s^2"]], qq)

    def test_negative_degree_entries_must_vanish(self, qq):
        bmap = _row_map("1", "0", [["0"]], qq)
        assert bmap.is_zero_map

    def test_double_dual(self, qq):
        bmap = _row_map("0,0,-1", "2,1", [["s^2", "t^2", "s^3"], ["s", "0", "s*t"]], qq)
        assert bmap.dual().dual() == bmap
        assert bmap.dual().shape == (3, 2)

    def test_compose_checks_middle(self, qq):
        a = _row_map("0", "1", [["s"]], qq)
        with pytest.raises(ValueError):
            a.compose(a)

    def test_graded_piece_shape(self, qq):
        bmap = _row_map("0,0", "1", [["s", "t"]], qq)
        rows = graded_piece(bmap, 2)
        assert len(rows) == sum(block_sizes(bmap.target, 2)) == 4
        assert len(rows[0]) == sum(block_sizes(bmap.source, 2)) == 6

    def test_minors(self, qq):
        bmap = _row_map("-1,-1", "0,0", [["s", "0"], ["0", "t"]], qq)
        assert bmap.minors(2) == [parse_form("s*t", qq)]


class TestKernel:
    def test_kernel_of_pencil(self, qq):
        bmap = _row_map("0,0", "1", [["s", "t"]], qq)
        res = kernel_splitting(bmap)
        assert res.splitting == SplittingType([-1])
        assert bmap.compose(res.basis).is_zero_map

    @pytest.mark.parametrize("d", range(1, 9))
    def test_complete_series_kernel(self, qq, d):
        target = SplittingType([d])
        columns = [[BinaryForm.monomial(qq, d, k)] for k in range(d + 1)]
        bmap = BundleMap.from_columns(SplittingType.trivial(d + 1), target, columns, qq)
        assert kernel_splitting(bmap).splitting == SplittingType([-1] * d)

    def test_twist_bounds_start_empty(self, qq):
        bmap = _row_map("0,0,0", "2", [["s^2", "s*t", "t^2"]], qq)
        lo, _ = twist_bounds(bmap)
        assert kernel_h0(bmap, lo) == 0

    def test_injective_image(self, qq):
        data = image_data(_row_map("-1", "0,0", [["s"], ["t"]], qq))
        assert (data.rank, data.degree, data.kernel_rank) == (1, -1, 0)

    def test_saturation_checks(self, qq):
        assert is_saturated_inclusion(_row_map("-1", "0,0", [["s"], ["t"]], qq))
        assert not is_saturated_inclusion(_row_map("-2", "0,0", [["s^2"], ["s*t"]], qq))

    def test_rank_one_image_degree(self, qq):
        bmap = _row_map("-2", "0,0", [["s^2"], ["s*t"]], qq)
        assert rank_one_image_degree(bmap) == (-1, -2)
        assert image_data(bmap).degree == -2

    def test_full_rank_colength(self, qq):
        bmap = _row_map("-1,-1", "0,0", [["s", "0"], ["0", "t"]], qq)
        assert full_rank_colength(bmap) == 2
        assert image_data(bmap).degree == -2

    def test_generic_rank(self, qq):
        assert generic_rank(_row_map("0,0", "1", [["s", "t"]], qq)) == 1

    def test_profile_of_splitting(self):
        prof = H0Profile.of_splitting(SplittingType([-1, -2]), -1, 3)
        assert prof.values == (0, 0, 1, 3, 5)
        assert prof.is_consistent()
        assert prof.eventual_slope == 2
        assert prof.at(10) == SplittingType([-1, -2]).h0(10)


class TestKernelOracle:
    """Randomized maps over GF(101): type, profile, degrees and syzygy must all agree."""

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(200))
    def test_random_map(self, seed):
        bmap = _random_map(np.random.default_rng(seed))
        assert bmap.target.degree <= 12
        res = kernel_splitting(bmap)
        lo, hi = twist_bounds(bmap)
        for d in range(lo, hi + 1):
            assert kernel_h0(bmap, d) == res.splitting.h0(d)
        data = image_data(bmap)
        assert res.splitting.rank == data.kernel_rank
        assert res.splitting.degree == data.kernel_degree
        assert bmap.source.degree - res.splitting.degree == data.degree
        assert bmap.compose(res.basis).is_zero_map


class TestLinalg:
    def test_rank_and_nullspace(self, qq):
        rows = [[1, 2, 3], [2, 4, 6]]
        assert linalg.rank(rows, 3, qq) == 1
        null = linalg.nullspace(rows, 3, qq)
        assert len(null) == 2
        for v in null:
            assert sum(a * b for a, b in zip(rows[0], v)) == 0

    def test_solve(self, gf5):
        assert linalg.solve([[1, 1], [0, 1]], [3, 1], 2, gf5) == [2, 1]
        assert linalg.solve([[1, 1], [1, 1]], [0, 1], 2, gf5) is None

    @pytest.mark.parametrize("p", [2, 5, 101])
    def test_rank_mod_p_matches_domain_rank(self, p):
        fs = FieldSpec.prime(p)
        rng = np.random.default_rng(p)
        for _ in range(40):
            nrows, ncols = (int(x) for x in rng.integers(1, 9, size=2))
            a = rng.integers(0, p, size=(nrows, ncols))
            # force some dependent rows
            if nrows > 2:
                a[-1] = (a[0] + 2 * a[1]) % p
            assert linalg.rank_mod_p(a, p) == linalg.rank(a.tolist(), ncols, fs)

    def test_rank_mod_p_edges(self):
        assert linalg.rank_mod_p(np.zeros((0, 4), dtype=np.int64), 5) == 0
        assert linalg.rank_mod_p(np.zeros((3, 3), dtype=np.int64), 5) == 0
        assert linalg.rank_mod_p(np.array([[5, 10], [0, 7]]), 5) == 1
        with pytest.raises(ValueError):
            linalg.rank_mod_p(np.eye(2, dtype=np.int64), 2**31 + 11)
