from __future__ import annotations

import itertools

import pytest

from latcov.constructions import maximal_pt_square
from latcov.core import Conjugate, EntrySet, conjugate, cyclic_square, parse_group, random_square
from latcov.core.io import load_cover, load_square
from latcov.covers import cross_cover, enumerate_covers
from latcov.exceptions import CensusMismatch, NotACover, NotMaximal, OddOrder, OrderTooSmall, WrongSize
from latcov.isoclasses import isotopy_representatives
from latcov.np1census import (
    CoverClass,
    CoverCensus,
    abelian_prediction,
    census,
    check_census,
    classify,
    conjecture_tq,
    cover_extensions_of_pt,
    cover_switches,
    every_entry_in_deficit2_pt,
    pt_count_formula,
    pts_in_cover,
    relation_checks,
    verify_relations,
)
from latcov.transversals import EnumerationMode, PartialTransversal, enumerate_pts, is_partial_transversal

ZN_CENSUS = {
    5: (100, 0, 0, 300, 0),
    6: (144, 864, 864, 0, 0),
    7: (3528, 0, 0, 5586, 0),
    8: (7424, 27648, 9216, 0, 1024),
    9: (115668, 0, 0, 145800, 0),
}


def _extensions(n: int, d: int) -> int:
    return {0: n * (n - 1), 1: 3 * (n - 1), 2: 8}.get(d, 0)


def _brute_pts(square, cover, d) -> int:
    return sum(
        1
        for subset in itertools.combinations(cover, square.n - d)
        if is_partial_transversal(EntrySet(square, subset))
    )


class TestClassify:
    @pytest.mark.parametrize(
        "name, expected",
        [
            ("z8_g1", CoverClass.G1),
            ("z8_g2", CoverClass.G2),
            ("z8_g3", CoverClass.G3),
            ("z8_g5", CoverClass.G5),
            ("star3", CoverClass.G4),
            ("z10_g1", CoverClass.G1),
        ],
    )
    def test_fixtures(self, name, expected):
        square, cover = load_cover(f"{name}.cover")
        assert classify(square, cover) is expected

    def test_wrong_size(self):
        square = cyclic_square(4)
        with pytest.raises(WrongSize):
            classify(square, cross_cover(square, 0, 0))

    def test_not_a_cover(self):
        square = cyclic_square(3)
        with pytest.raises(NotACover):
            classify(square, [(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1)])


class TestPartialTransversalsInCovers:
    @pytest.mark.parametrize("name", ["z8_g1", "z8_g2", "z8_g3", "z8_g5", "star3"])
    @pytest.mark.parametrize("d", [0, 1, 2, 3])
    def test_formula_matches_enumeration(self, name, d):
        square, cover = load_cover(f"{name}.cover")
        cls = classify(square, cover)
        assert pts_in_cover(square, cover, d) == pt_count_formula(cls, square.n, d) == _brute_pts(square, cover, d)

    def test_g1_has_no_deficit1_pts(self, z8_covers, z10_cover):
        square, cover = z8_covers["z8_g1"]
        assert pts_in_cover(square, cover, 1) == 0
        square, cover = z10_cover
        assert pts_in_cover(square, cover, 1) == 0
        assert pts_in_cover(square, cover, 2) == 8

    @pytest.mark.parametrize("name", ["z8_g1", "z8_g2", "z8_g3", "z8_g5"])
    def test_every_entry_in_a_deficit2_pt(self, name, z8_covers):
        assert every_entry_in_deficit2_pt(*z8_covers[name])

    @pytest.mark.parametrize("cls, d, expected", [("G4", 0, 1), ("G5", 0, 0), ("G1", 1, 0), ("G3", 1, 3), ("G2", 1, 2)])
    def test_formula_values(self, cls, d, expected):
        assert pt_count_formula(cls, 8, d) == expected


class TestEveryCover:
    @pytest.mark.parametrize(
        "n, seed",
        [(5, 0), (5, 1), pytest.param(6, 0, marks=pytest.mark.slow), pytest.param(6, 1, marks=pytest.mark.slow)],
    )
    def test_random_square(self, n, seed):
        square = random_square(n, seed)
        images = {conj: conjugate(square, conj) for conj in Conjugate}
        covers = list(enumerate_covers(square, n + 1))
        assert covers
        for cover in covers:
            cls = classify(square, cover)
            assert cover.is_minimal is (cls is not CoverClass.G4)
            for d in range(4):
                assert pts_in_cover(square, cover, d) == pt_count_formula(cls, n, d)
            for conj, image in images.items():
                assert classify(image, [conj.apply(e) for e in cover]) is cls


class TestSwitches:
    def test_g5_to_g3(self):
        square = load_square("switching6.ls")
        _, cover = load_cover("switching_g5.cover")
        exchanges = cover_switches(square, cover, CoverClass.G3)
        assert ((2, 5, 0), (2, 0, 4)) in exchanges
        for removed, added in exchanges:
            switched = EntrySet(square, cover)
            switched.discard(removed)
            switched.add(added)
            assert classify(square, switched) is CoverClass.G3

    def test_switched_cover_fixture(self):
        square, cover = load_cover("switching_g3.cover")
        assert classify(square, cover) is CoverClass.G3


class TestCensus:
    @pytest.mark.parametrize(
        "n", [5, 6, 7, pytest.param(8, marks=pytest.mark.slow), pytest.param(9, marks=pytest.mark.slow)]
    )
    def test_cyclic_groups(self, n):
        result = census(cyclic_square(n), source=f"Z{n}")
        assert result.q == ZN_CENSUS[n]
        assert result.total == sum(ZN_CENSUS[n])
        assert result.qmin == result.total - result.q4

    def test_z5_counts(self):
        result = census(cyclic_square(5))
        assert (result.t, result.pmax, result.p) == (15, 0, 75)
        assert result.total == 400

    def test_z6_counts(self):
        result = census(cyclic_square(6))
        assert (result.t, result.pmax, result.p) == (0, 288, 288)
        assert result.total == 1872

    def test_z7_total(self):
        assert census(cyclic_square(7)).total == 9114

    def test_identities_are_enforced(self):
        bad = CoverCensus(order=5, q=(100, 0, 0, 299, 0), t=15, pmax=0, p=75)
        with pytest.raises(CensusMismatch):
            check_census(bad)

    def test_report(self, capsys):
        result = census(cyclic_square(5), source="Z5")
        payload = result.to_dict()
        assert payload["q"] == [100, 0, 0, 300, 0]
        assert payload["q4_identity_ok"] is True
        assert result.by_class()[CoverClass.G4] == 300
        result.summary()
        assert "## (n+1)-cover census, order 5 Z5" in capsys.readouterr().out


class TestExtensions:
    def test_transversal(self):
        square = cyclic_square(5)
        pt = PartialTransversal(square, [(i, i, 2 * i % 5) for i in range(5)])
        assert cover_extensions_of_pt(square, pt) == 20

    def test_deficit1(self):
        square = cyclic_square(6)
        pt = next(enumerate_pts(square, 1, EnumerationMode.MAXIMAL_ONLY))
        assert cover_extensions_of_pt(square, pt) == 15

    def test_deficit2(self, z10_cover):
        square, cover = z10_cover
        pt = next(
            PartialTransversal(square, subset)
            for subset in itertools.combinations(cover, square.n - 2)
            if is_partial_transversal(EntrySet(square, subset))
        )
        assert pt.is_maximal()
        assert cover_extensions_of_pt(square, pt) == 8

    def test_large_deficit(self):
        square, pt = maximal_pt_square(6, 3)
        assert cover_extensions_of_pt(square, pt) == 0

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_random_squares(self, n):
        # 13 squares per order, at most 5 maximal partial transversals per deficit
        for seed in range(13):
            square = random_square(n, seed)
            for d in range(4):
                for pt in itertools.islice(enumerate_pts(square, d, EnumerationMode.MAXIMAL_ONLY), 5):
                    assert cover_extensions_of_pt(square, pt) == _extensions(n, d)
                    if d == 1:
                        assert all(cover.is_minimal for cover in enumerate_covers(square, n + 1, base=pt))

    def test_not_maximal(self):
        square, entries = load_cover("fig1_left.pt")
        with pytest.raises(NotMaximal):
            cover_extensions_of_pt(square, PartialTransversal.from_entry_set(entries))

    def test_order_too_small(self):
        square = cyclic_square(2)
        with pytest.raises(OrderTooSmall):
            cover_extensions_of_pt(square, PartialTransversal(square, [(0, 0, 0)]))


class TestRelations:
    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_cyclic_groups_pass(self, n):
        report = verify_relations(cyclic_square(n))
        assert report.all_pass
        assert report.failures == []

    def test_given_census_is_reused(self):
        result = census(cyclic_square(6))
        report = verify_relations(cyclic_square(6), result=result)
        assert report.census is result
        assert report.to_dict()["relations"] == relation_checks(result)

    def test_order_too_small(self):
        result = CoverCensus(order=2, q=(0, 0, 0, 0, 0), t=0, pmax=0, p=0)
        with pytest.raises(OrderTooSmall):
            relation_checks(result)

    @pytest.mark.parametrize("n", [4, 5, pytest.param(6, marks=pytest.mark.slow)])
    def test_every_class(self, n):
        for square in isotopy_representatives(n):
            assert verify_relations(square).all_pass


class TestPredictions:
    @pytest.mark.parametrize(
        "spec, sylow2",
        [
            ("Z4", "cyclic"),
            ("Z2xZ2", "non-cyclic"),
            ("Z5", "trivial"),
            ("Z6", "cyclic"),
            ("Z7", "trivial"),
            pytest.param("Z8", "cyclic", marks=pytest.mark.slow),
            pytest.param("Z2xZ4", "non-cyclic", marks=pytest.mark.slow),
            pytest.param("Z2xZ2xZ2", "non-cyclic", marks=pytest.mark.slow),
        ],
    )
    def test_confirmed(self, spec, sylow2):
        prediction = abelian_prediction(parse_group(spec), check=True)
        assert prediction.sylow2 == sylow2
        assert prediction.confirmed is True

    def test_unchecked(self):
        prediction = abelian_prediction(parse_group("Z6"))
        assert prediction.confirmed is None
        assert prediction.zeros == ("t", "q4")
        assert prediction.to_dict()["confirmed"] is None


class TestConjecture:
    def test_order4_classes(self):
        for square in isotopy_representatives(4):
            assert conjecture_tq(square).holds

    @pytest.mark.slow
    def test_order6_classes(self):
        for square in isotopy_representatives(6):
            assert conjecture_tq(square).holds

    @pytest.mark.slow
    def test_z8(self):
        assert conjecture_tq(cyclic_square(8)).holds

    def test_z6_values(self):
        check = conjecture_tq(cyclic_square(6))
        assert check.t == 0
        assert check.qmin == 1872
        assert check.holds

    def test_odd_order(self):
        with pytest.raises(OddOrder):
            conjecture_tq(cyclic_square(5))
