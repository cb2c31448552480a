from __future__ import annotations

import functools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import squares

from latcov.config import default_large_cover_config
from latcov.core import Conjugate, EntrySet, cyclic_square, random_square, validate
from latcov.core.io import load_cover
from latcov.covers import (
    Cover,
    LargeCoverTrace,
    NormalizeOutcome,
    PotentialCover,
    count_covers,
    cover_to_pt,
    cross_cover,
    enumerate_covers,
    extend_partial_minimal_cover,
    is_cover,
    is_minimal_cover,
    large_minimal_cover,
    largest_minimal_cover,
    max_minimal_cover_size,
    min_cover_size,
    minimal_cover_spectrum,
    minimal_np1_through_entry,
    mu_bound,
    normalize_potential_cover,
    pt_to_cover,
    redundant_entries,
    strip_redundancies,
    unique_partition,
)
from latcov.exceptions import (
    BudgetExceeded,
    ForcedEntryNotInCover,
    NotACover,
    NotAPotentialCover,
    NotATransversal,
    NotMinimal,
    OrderTooSmall,
    RedundantEntryPresent,
    TooSmall,
)
from latcov.transversals import PartialTransversal, count_transversals, find_pt, min_deficit
from latcov.utils import SearchBudget

# pairs (line a, line b) from the three "busy" lines {0, 1, 2}
_PAIRS = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0)]

LARGE_ORDERS = [100, 200, 400]


def _busy_lines_cover(n: int, extra: list[tuple[int, int, int]]) -> PotentialCover:
    """
    Rows, columns and symbols 3..9 are each represented by one entry lying on two of
    the lines 0, 1, 2; `extra` represents whatever is left.
    """

    triples = []
    for k, (a, b) in enumerate(_PAIRS):
        line = 3 + k
        triples += [(line, a, b), (a, line, b), (a, b, line)]
    return PotentialCover(n, triples + extra)


def _order6_normalized() -> PotentialCover:
    return PotentialCover(
        6,
        [
            (2, 0, 0), (3, 0, 1), (4, 1, 0), (5, 1, 1),
            (0, 2, 0), (0, 3, 1), (1, 4, 0), (1, 5, 1),
            (0, 0, 2), (0, 1, 3), (1, 0, 4), (1, 1, 5),
        ],
    )  # fmt: skip


class TestCoverPredicates:
    def test_whole_square_strips_to_a_minimal_cover(self, fig1):
        entries = EntrySet(fig1, fig1.entries())
        assert is_cover(entries)
        assert len(redundant_entries(entries)) == 16
        stripped = strip_redundancies(entries)
        assert is_minimal_cover(stripped)
        assert not redundant_entries(stripped)

    @settings(max_examples=25, deadline=None)
    @given(squares(1, 7))
    def test_stripping_any_square(self, square):
        stripped = strip_redundancies(EntrySet(square, square.entries()))
        assert is_minimal_cover(stripped)
        assert square.n <= len(stripped) <= mu_bound(square.n)

    def test_cover_rejects_uncovered_lines(self, fig1):
        with pytest.raises(NotACover):
            Cover(fig1, [(0, 0, 0)])

    def test_figure_cover(self):
        square, entries = load_cover("fig1_right.cover")
        cover = Cover.from_entry_set(entries)
        assert len(cover) == square.n + 1
        assert cover.excess == 1

    def test_unique_partition_example(self):
        _, entries = load_cover("fig3.cover")
        parts = unique_partition(entries)
        assert parts.UR == ((1, 1, 4), (5, 5, 2))
        assert parts.URCS == ((3, 3, 6),)
        assert len(parts) == len(entries)

    def test_unique_partition_rejects_redundancy(self, fig1):
        with pytest.raises(RedundantEntryPresent):
            unique_partition(EntrySet(fig1, fig1.entries()))

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_cross_cover(self, n):
        square = cyclic_square(n)
        for r, c in [(0, 0), (n - 1, 1)]:
            cover = cross_cover(square, r, c)
            assert len(cover) == 2 * n - 1
            assert cover.is_minimal
            sizes = unique_partition(cover).sizes()
            assert sizes["URCS"] == 0

    def test_to_dict_carries_the_partition(self):
        cover = cross_cover(cyclic_square(4), 0, 0)
        payload = cover.to_dict()
        assert payload["minimal"] is True
        assert payload["size"] == 7
        assert sum(len(part) for part in payload["partition"].values()) == 7


class TestBounds:
    @pytest.mark.parametrize("n, mu", [(1, 1), (2, 3), (3, 5), (4, 7), (5, 9), (6, 12), (9, 19), (12, 27), (20, 48)])
    def test_mu(self, n, mu):
        assert mu_bound(n) == mu

    @pytest.mark.parametrize("t", range(1, 30))
    def test_mu_is_exact_at_pronic_orders(self, t):
        n = t * t + t
        # 3(n + 1/2) - 3 sqrt(n + 1/4) is an integer when n = t^2 + t
        assert mu_bound(n) == 3 * n - 3 * t

    @pytest.mark.parametrize("n", range(1, 200))
    def test_mu_against_floats(self, n):
        value = 3 * (n + 0.5) - 3 * math.sqrt(n + 0.25)
        assert mu_bound(n) == math.floor(value + 1e-9)

    def test_mu_rejects_order0(self):
        with pytest.raises(ValueError):
            mu_bound(0)

    @pytest.mark.parametrize("n, size", [(2, 3), (5, 5), (6, 7), (8, 9)])
    def test_min_cover_size(self, n, size):
        assert min_cover_size(cyclic_square(n)) == size


class TestConversions:
    def test_transversal_is_already_a_cover(self):
        square = cyclic_square(5)
        pt = PartialTransversal(square, [(i, i, 2 * i % 5) for i in range(5)])
        assert len(pt_to_cover(square, pt)) == 5

    def test_order_too_small(self):
        square = validate([[0]])
        with pytest.raises(OrderTooSmall):
            pt_to_cover(square, PartialTransversal(square))

    @settings(max_examples=30, deadline=None)
    @given(squares(2, 6), st.data())
    def test_partial_transversal_to_cover(self, square, data):
        n = square.n
        d = data.draw(st.integers(min_deficit(square), n))
        pt = find_pt(square, d)
        assert pt is not None
        cover = pt_to_cover(square, pt)
        assert len(cover) == n + (d + 1) // 2
        assert set(pt) <= set(cover)

    @settings(max_examples=30, deadline=None)
    @given(squares(2, 6))
    def test_cover_to_partial_transversal(self, square):
        n = square.n
        cover = pt_to_cover(square, find_pt(square, min_deficit(square)))
        a = len(cover) - n
        pt = cover_to_pt(square, cover)
        assert pt.deficit == min(2 * a, n)
        assert set(pt) <= set(cover)

    def test_forced_entry_survives(self):
        square, entries = load_cover("fig1_right.cover")
        for entry in entries:
            pt = cover_to_pt(square, entries, forced=entry)
            assert entry in pt
            assert pt.deficit == 2

    def test_forced_entry_outside_cover(self):
        square, entries = load_cover("fig1_right.cover")
        outside = next(e for e in square.entries() if e not in entries)
        with pytest.raises(ForcedEntryNotInCover):
            cover_to_pt(square, entries, forced=outside)

    def test_not_a_cover(self, fig1):
        with pytest.raises(NotACover):
            cover_to_pt(fig1, EntrySet(fig1, [(0, 0, 0)]))


class TestEnumeration:
    @settings(max_examples=20, deadline=None)
    @given(squares(1, 5))
    def test_size_n_covers_are_transversals(self, square):
        assert count_covers(square, square.n) == count_transversals(square)

    def test_minimal_np1_covers_of_z5(self):
        square = cyclic_square(5)
        assert sum(1 for cover in enumerate_covers(square, 6) if cover.is_minimal) == 400

    def test_each_cover_once(self):
        square = cyclic_square(4)
        covers = list(enumerate_covers(square, 5))
        assert len(covers) == len(set(covers))
        assert all(len(cover) == 5 for cover in covers)

    def test_base_entries(self):
        square = cyclic_square(5)
        through = list(enumerate_covers(square, 5, base=[(0, 0, 0)]))
        assert len(through) == 3
        assert all((0, 0, 0) in cover for cover in through)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            count_covers(cyclic_square(7), 8, budget=SearchBudget(50))


class TestExtension:
    @pytest.mark.parametrize("name", ["fig7_left.pmc", "fig7_right.pmc"])
    def test_figure_partial_covers(self, name):
        square, partial = load_cover(name)
        cover = extend_partial_minimal_cover(square, partial)
        assert cover.is_minimal
        assert len(cover) >= len(partial)

    def test_small_sets_get_a_cross_cover(self):
        square = cyclic_square(5)
        cover = extend_partial_minimal_cover(square, EntrySet(square, [(2, 3, 0)]))
        assert cover == cross_cover(square, 2, 3)

    def test_empty_set(self):
        square = cyclic_square(4)
        assert len(extend_partial_minimal_cover(square, EntrySet(square))) == 7

    def test_rejects_redundancy(self, fig1):
        with pytest.raises(RedundantEntryPresent):
            extend_partial_minimal_cover(fig1, EntrySet(fig1, fig1.entries()))

    def test_covers_pass_through(self):
        square = cyclic_square(6)
        cover = cross_cover(square, 1, 1)
        assert extend_partial_minimal_cover(square, cover) == cover

    @settings(max_examples=20, deadline=None)
    @given(st.data())
    def test_random_redundancy_free_sets(self, data):
        self._extend_random_set(data, data.draw(squares(3, 8)))

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    @settings(max_examples=1000, deadline=None)
    @given(data=st.data())
    def test_random_redundancy_free_sets_per_order(self, n, data):
        self._extend_random_set(data, data.draw(squares(n, n)))

    @staticmethod
    def _extend_random_set(data, square):
        rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
        entries = EntrySet(square)
        for index in rng.permutation(square.n * square.n):
            r, c = divmod(int(index), square.n)
            entries.add(square.entry(r, c))
            if any(entries.is_redundant(e) for e in entries):
                entries.discard(square.entry(r, c))
        # any subset of a redundancy-free set is redundancy-free
        size = data.draw(st.integers(0, len(entries)))
        partial = EntrySet(square, list(entries)[:size])
        cover = extend_partial_minimal_cover(square, partial)
        assert cover.is_minimal
        assert len(cover) >= len(partial)


class TestPotentialCover:
    def test_normalized_example(self):
        cover = _order6_normalized()
        assert len(cover) == 12 == mu_bound(6)
        assert cover.is_minimal()
        result, outcome = normalize_potential_cover(cover)
        assert outcome is NormalizeOutcome.NORMALIZED
        assert result == cover

    def test_unique_entry_grows(self):
        cover = _busy_lines_cover(11, [(10, 10, 10)])
        assert len(cover) == 22
        assert unique_partition(cover).URCS == ((10, 10, 10),)
        result, outcome = normalize_potential_cover(cover)
        assert outcome is NormalizeOutcome.GREW
        assert len(result) == 23
        assert result.is_minimal()

    def test_switches_to_normal_form(self):
        cover = _busy_lines_cover(11, [(10, 10, 2), (2, 1, 10)])
        parts = unique_partition(cover)
        assert parts.URC == ((10, 10, 2),)
        result, outcome = normalize_potential_cover(cover)
        assert outcome is NormalizeOutcome.NORMALIZED
        assert len(result) == len(cover)
        assert result.is_minimal()
        sizes = unique_partition(result).sizes()
        assert sizes["URC"] == sizes["URS"] == sizes["UCS"] == sizes["URCS"] == 0

    def test_too_small(self):
        square = cyclic_square(5)
        with pytest.raises(TooSmall):
            normalize_potential_cover(PotentialCover.from_entry_set(cross_cover(square, 0, 0)))

    def test_not_minimal(self):
        square = cyclic_square(3)
        with pytest.raises(NotMinimal):
            normalize_potential_cover(PotentialCover(3, square.entries()))

    def test_clashes(self):
        with pytest.raises(NotAPotentialCover):
            PotentialCover(2, [(0, 0, 0), (0, 1, 0), (1, 1, 1)])
        with pytest.raises(NotAPotentialCover):
            PotentialCover(2, [(0, 0, 0)])
        with pytest.raises(NotAPotentialCover):
            PotentialCover(2, [(0, 0, 2), (1, 1, 1)])

    def test_conjugates(self):
        cover = _order6_normalized()
        for conj in Conjugate:
            image = cover.conjugate(conj)
            assert image.conjugate(conj.inverse) == cover
            assert len(image) == len(cover)

    def test_stripped(self):
        square = cyclic_square(4)
        stripped = PotentialCover(4, square.entries()).stripped()
        assert stripped.is_minimal()
        assert set(stripped) == set(strip_redundancies(EntrySet(square, square.entries())))


class TestThroughEntry:
    def test_cyclic_order7_every_entry(self):
        square = cyclic_square(7)
        transversal = [(i, i, 2 * i % 7) for i in range(7)]
        for entry in square.entries():
            cover = minimal_np1_through_entry(square, transversal, entry)
            assert entry in cover
            assert len(cover) == 8
            assert cover.is_minimal

    @pytest.mark.parametrize(
        "n", [5, 6, 7, pytest.param(8, marks=pytest.mark.slow), pytest.param(9, marks=pytest.mark.slow)]
    )
    def test_random_squares(self, n):
        tested = 0
        for seed in range(20):
            square = random_square(n, seed)
            transversal = find_pt(square, 0)
            if transversal is None:
                continue
            for r in range(0, n, 2):
                entry = square.entry(r, (3 * r + seed) % n)
                cover = minimal_np1_through_entry(square, transversal, entry)
                assert entry in cover
                assert len(cover) == n + 1
                assert cover.is_minimal
            tested += 1
            if tested == 3:
                break
        assert tested

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [7, 8])
    def test_every_entry_is_constructed(self, n, logged_warnings):
        tested = 0
        for seed in range(40):
            square = random_square(n, seed)
            transversal = find_pt(square, 0)
            if transversal is None:
                continue
            for entry in square.entries():
                cover = minimal_np1_through_entry(square, transversal, entry)
                assert entry in cover
                assert len(cover) == n + 1
                assert cover.is_minimal
            tested += 1
            if tested == 20:
                break
        assert tested == 20
        assert logged_warnings == []

    def test_order_too_small(self):
        square = cyclic_square(3)
        with pytest.raises(OrderTooSmall):
            minimal_np1_through_entry(square, [(0, 0, 0), (1, 1, 2), (2, 2, 1)], (0, 0, 0))

    def test_not_a_transversal(self):
        square = cyclic_square(5)
        with pytest.raises(NotATransversal):
            minimal_np1_through_entry(square, [(i, i, 2 * i % 5) for i in range(4)], (0, 0, 0))


class TestLargest:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_small_orders_reach_the_bound(self, n):
        for square in (cyclic_square(n), random_square(n, 7)):
            assert max_minimal_cover_size(square) == 2 * n - 1 == mu_bound(n)

    def test_z6(self):
        cover = largest_minimal_cover(cyclic_square(6))
        assert len(cover) == 11
        assert cover.is_minimal

    @pytest.mark.slow
    def test_z9(self):
        assert max_minimal_cover_size(cyclic_square(9)) == 18


class TestSpectrum:
    def test_z3(self):
        report = minimal_cover_spectrum(cyclic_square(3), 3, 5)
        assert report.exact
        assert report.sizes == {3, 5}
        assert report.gaps == [4]
        assert set(report.witnesses) == {3, 5}
        assert all(w.is_minimal and len(w) == c for c, w in report.witnesses.items())

    def test_klein(self, group_table):
        report = minimal_cover_spectrum(group_table("Z2xZ2"), 4, 7)
        assert {4, 6} <= report.sizes
        assert 5 not in report.sizes

    def test_witness_mode_agrees(self):
        square = cyclic_square(5)
        exact = minimal_cover_spectrum(square, 5, 9)
        witness = minimal_cover_spectrum(square, 5, 9, exact=False)
        assert witness.sizes == exact.sizes
        assert None not in witness.achievable.values()

    def test_csv(self):
        report = minimal_cover_spectrum(cyclic_square(3), 3, 5)
        assert report.to_csv({3: "c3.cover"}).splitlines() == [
            "c,achievable,witness-file",
            "3,true,c3.cover",
            "4,false,",
            "5,true,",
        ]


class TestLargeCovers:
    def test_small_order(self):
        square = random_square(30, 2, moves=2000)
        cover, trace = large_minimal_cover(square, 0.2, seed=4)
        assert cover.is_minimal
        assert square.n <= len(cover) <= mu_bound(30)
        assert trace.size == len(cover)
        assert trace.psi == math.floor(30 ** (0.5 + 0.2))

    def test_reproducible(self):
        square = random_square(40, 1, moves=2000)
        first, trace = large_minimal_cover(square, 0.2, seed=9)
        second, again = large_minimal_cover(square, 0.2, seed=9)
        assert first == second
        assert trace.to_dict() == again.to_dict()

    @pytest.mark.parametrize("eps", [0.0, 0.5, -0.1])
    def test_eps_range(self, eps):
        with pytest.raises(ValueError):
            large_minimal_cover(cyclic_square(10), eps)

    def test_greedy_fallback(self):
        config = default_large_cover_config()
        config["retries"] = 0
        cover, trace = large_minimal_cover(random_square(25, 3, moves=1000), 0.2, config=config)
        assert cover.is_minimal
        assert "U1" in trace.fallbacks

    @pytest.mark.slow
    @pytest.mark.parametrize("n", LARGE_ORDERS)
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_close_to_3n(self, n, seed):
        cover, trace = _large_run(n, seed)
        assert cover.is_minimal
        assert trace.allowed_deficit == default_large_cover_config()["deficit_constant"] * trace.psi
        assert trace.deficit <= trace.allowed_deficit

    @pytest.mark.slow
    def test_fraction_of_3n_grows_with_n(self):
        fractions = [sum(_large_run(n, seed)[1].size for seed in range(3)) / (9 * n) for n in LARGE_ORDERS]
        assert fractions == sorted(fractions)

    def test_trace_reports_the_deficit(self):
        _, trace = large_minimal_cover(random_square(30, 2, moves=2000), 0.2, seed=4)
        payload = trace.to_dict()
        assert payload["deficit"] == 90 - trace.size
        assert payload["allowed_deficit"] == 4.0 * trace.psi


@functools.cache
def _large_run(n: int, seed: int) -> tuple[Cover, LargeCoverTrace]:
    return large_minimal_cover(random_square(n, seed, moves=20 * n), 0.2, seed=seed)
