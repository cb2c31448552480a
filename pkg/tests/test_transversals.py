from __future__ import annotations

import pytest
from hypothesis import given, settings
from strategies import squares

from latcov.core import cyclic_square, validate
from latcov.core.io import load_cover, load_square
from latcov.exceptions import BudgetExceeded, NotAPartialTransversal
from latcov.transversals import (
    EnumerationMode,
    PartialTransversal,
    count_pts,
    count_transversals,
    deficit_census_sample,
    enumerate_pts,
    find_pt,
    is_maximal,
    min_deficit,
    min_maximal_pt_size,
    shortest_maximal_pt,
    transversal_avoiding,
    transversal_through,
)
from latcov.utils import SearchBudget


class TestPartialTransversal:
    def test_rejects_shared_lines(self, fig1):
        with pytest.raises(NotAPartialTransversal):
            PartialTransversal(fig1, [(0, 0, 0), (0, 1, 1)])
        with pytest.raises(NotAPartialTransversal):
            PartialTransversal(fig1, [(0, 0, 0), (2, 2, 0)])

    def test_free_lines_and_extensions(self, fig1):
        pt = PartialTransversal(fig1, [(0, 0, 0), (1, 1, 2)])
        assert pt.deficit == 2
        assert pt.free_rows == [2, 3]
        assert pt.free_cols == [2, 3]
        assert pt.free_syms == [1, 3]
        # rows 2, 3 on columns 2, 3 hold 0 1 / 3 2
        assert pt.extensions() == [(2, 3, 1), (3, 2, 3)]
        assert not pt.is_maximal()

    def test_figure_examples(self):
        _, left = load_cover("fig1_left.pt")
        pt = PartialTransversal.from_entry_set(left)
        assert not pt.is_maximal()
        _, middle = load_cover("fig1_middle.pt")
        assert PartialTransversal.from_entry_set(middle).deficit == 0

    def test_order6_maximal_example(self):
        square, entries = load_cover("order6_maximal.pt")
        assert is_maximal(square, entries)
        assert PartialTransversal.from_entry_set(entries).deficit == 1

    def test_transversal_is_maximal(self):
        square = cyclic_square(5)
        assert is_maximal(square, [(i, i, 2 * i % 5) for i in range(5)])

    def test_to_dict(self, fig1):
        payload = PartialTransversal(fig1, [(0, 0, 0)]).to_dict()
        assert payload == {"order": 4, "deficit": 3, "entries": [[0, 0, 0]], "maximal": False}


class TestCounting:
    @pytest.mark.parametrize("n, expected", [(1, 1), (2, 0), (3, 3), (4, 0), (5, 15), (6, 0), (7, 133)])
    def test_cyclic_transversals(self, n, expected):
        assert count_transversals(cyclic_square(n)) == expected

    def test_klein_table_has_transversals(self, group_table):
        assert count_transversals(group_table("Z2xZ2")) == 8

    @pytest.mark.parametrize("n, expected", [(2, 1), (3, 0), (5, 0), (6, 1), (8, 1)])
    def test_min_deficit(self, n, expected):
        assert min_deficit(cyclic_square(n)) == expected

    def test_order1(self):
        square = validate([[0]])
        assert min_deficit(square) == 0
        assert count_pts(square, 1) == 1

    def test_empty_set_is_the_only_deficit_n_pt(self):
        assert count_pts(cyclic_square(4), 4) == 1

    def test_deficit_out_of_range(self, fig1):
        with pytest.raises(ValueError):
            list(enumerate_pts(fig1, 5))
        with pytest.raises(ValueError):
            list(enumerate_pts(fig1, -1))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            count_transversals(cyclic_square(7), budget=SearchBudget(10))

    @settings(max_examples=20, deadline=None)
    @given(squares(1, 5))
    def test_enumeration_matches_counting(self, square):
        for d in range(square.n + 1):
            pts = list(enumerate_pts(square, d))
            assert len(pts) == count_pts(square, d)
            assert len(set(pts)) == len(pts)
            assert all(pt.deficit == d for pt in pts)

    @settings(max_examples=20, deadline=None)
    @given(squares(2, 6))
    def test_maximal_only_filters(self, square):
        d = 1
        everything = list(enumerate_pts(square, d))
        maximal = list(enumerate_pts(square, d, EnumerationMode.MAXIMAL_ONLY))
        assert maximal == [pt for pt in everything if pt.is_maximal()]
        assert count_pts(square, d, maximal_only=True) == len(maximal)

    def test_mode_from_string(self, fig1):
        assert list(enumerate_pts(fig1, 1, "maximalOnly")) == list(enumerate_pts(fig1, 1, EnumerationMode.MAXIMAL_ONLY))

    def test_find_pt(self):
        assert find_pt(cyclic_square(6), 0) is None
        pt = find_pt(cyclic_square(6), 1)
        assert pt is not None
        assert pt.deficit == 1


class TestThroughAndAvoiding:
    def test_through_an_entry(self):
        square = cyclic_square(7)
        for entry in [(0, 0, 0), (3, 5, 1), (6, 6, 5)]:
            transversal = transversal_through(square, entry)
            assert transversal is not None
            assert entry in transversal
            assert transversal.deficit == 0

    def test_through_without_transversals(self):
        assert transversal_through(cyclic_square(6), (0, 0, 0)) is None

    def test_avoiding_a_cell(self):
        square = cyclic_square(5)
        found = list(transversal_avoiding(square, frozenset({0})))
        # each cell of Z5 lies on 15 * 5 / 25 = 3 transversals
        assert len(found) == 12
        assert all((0, 0, 0) not in t for t in found)

    def test_avoiding_nothing(self):
        assert len(list(transversal_avoiding(cyclic_square(5), frozenset()))) == 15


class TestShortestMaximal:
    @settings(max_examples=15, deadline=None)
    @given(squares(1, 6))
    def test_is_maximal_and_shortest(self, square):
        pt = shortest_maximal_pt(square)
        assert pt.is_maximal()
        assert len(pt) >= (square.n + 1) // 2
        for d in range(pt.deficit + 1, square.n + 1):
            assert count_pts(square, d, maximal_only=True) == 0

    def test_order6_example_square(self):
        square = load_square("order6_maximal_pt.ls")
        assert min_maximal_pt_size(square) <= 5

    def test_transversal_fallback(self):
        # every maximal partial transversal of Z3 is a transversal
        assert min_maximal_pt_size(cyclic_square(3)) == 3


class TestDeficitCensus:
    def test_reproducible(self):
        first = deficit_census_sample(5, 4, seed=3)
        second = deficit_census_sample(5, 4, seed=3)
        assert first.sizes == second.sizes
        assert first.samples == 4
        assert sum(first.counts.values()) == 4
        assert all(3 <= size <= 5 for size in first.sizes)

    def test_report(self, capsys):
        census = deficit_census_sample(4, 3, seed=1)
        payload = census.to_dict()
        assert payload["order"] == 4
        assert payload["seed"] == 1
        assert len(payload["sizes"]) == 3
        assert census.largest_deficit == 4 - min(census.sizes)
        census.summary()
        assert "## Shortest maximal partial transversals" in capsys.readouterr().out
