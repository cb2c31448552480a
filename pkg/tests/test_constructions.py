from __future__ import annotations

import functools
import json

import numpy as np
import pytest

from latcov.constructions import (
    ConstructionBundle,
    build_t2t,
    cover_family,
    disjoint_transversals,
    idempotent_square,
    idempotent_with_disjoint_transversals,
    idempotentize,
    is_orthogonal,
    load_bundle,
    maximal_pt_square,
    mols,
    relabeled_array,
    ryser_embed,
    save_bundle,
    verify_bundle,
)
from latcov.core import EntrySet, cyclic_square
from latcov.core.entry import Entry
from latcov.covers import is_minimal_cover, minimal_cover_spectrum, unique_partition
from latcov.exceptions import (
    BadParameters,
    InvalidBundle,
    MultiplicityViolation,
    NotATransversal,
    OutOfRange,
    RowRepeat,
    Unsupported,
)
from latcov.transversals import is_partial_transversal

RYSER_BLOCK = [
    [0, 5, 6, 2, 1],
    [2, 1, 0, 6, 3],
    [4, 3, 2, 1, 0],
    [1, 0, 4, 3, 5],
    [5, 6, 1, 0, 4],
]

# no search over even idempotent squares of order 6 or more
FAST_PARAMETERS = [(5, 1), (5, 2), (6, 1), (6, 3), (7, 2), (8, 3), (8, 4), (10, 4), (10, 5), (11, 4), (11, 5)]


@functools.cache
def _bundle(t: int) -> ConstructionBundle:
    return build_t2t(t)


class TestMols:
    @pytest.mark.parametrize("t", [3, 4, 5, 7, 8, 9, 12, 16])
    def test_orthogonal(self, t):
        pair = mols(t)
        assert pair.order == t
        assert pair.is_orthogonal
        assert all(pair.a[r, r] == 0 and pair.b[r, r] == r for r in range(t))

    @pytest.mark.parametrize("t", [0, 1, 2, 6, 10, 14])
    def test_unsupported(self, t):
        with pytest.raises(Unsupported):
            mols(t)

    def test_is_orthogonal(self):
        assert not is_orthogonal(cyclic_square(5), cyclic_square(5))
        assert not is_orthogonal(cyclic_square(3), cyclic_square(4))

    def test_to_dict(self):
        payload = mols(3).to_dict()
        assert payload["order"] == 3
        assert len(payload["a"]) == len(payload["b"]) == 3


class TestIdempotent:
    @pytest.mark.parametrize("k", [1, 3, 4, 5, 6, 7, 8])
    def test_idempotent_square(self, k):
        square = idempotent_square(k)
        assert square.n == k
        assert square.is_idempotent

    @pytest.mark.parametrize("k", [0, 2])
    def test_unsupported(self, k):
        with pytest.raises(Unsupported):
            idempotent_square(k)

    def test_idempotentize(self):
        square = cyclic_square(5)
        result = idempotentize(square, [(i, i, 2 * i % 5) for i in range(5)])
        assert result.is_idempotent

    def test_idempotentize_rejects_non_transversals(self):
        square = cyclic_square(4)
        with pytest.raises(NotATransversal):
            idempotentize(square, [(i, i, 2 * i % 4) for i in range(4)])

    def test_broken_diagonals(self):
        square = idempotent_square(7)
        found = disjoint_transversals(square, 6, avoid_diagonal=True)
        assert len(found) == 6
        cells = [cell for pt in found for cell in pt.cells]
        assert len(cells) == len(set(cells)) == 42
        assert all(r != c for pt in found for r, c, _ in pt)

    def test_searched_transversals(self, group_table):
        square = group_table("Z2xZ2")
        found = disjoint_transversals(square, 2)
        assert len(found) == 2
        assert not found[0].cells & found[1].cells
        assert all(pt.deficit == 0 for pt in found)

    def test_none_requested(self):
        assert disjoint_transversals(cyclic_square(4), 0) == []

    @pytest.mark.parametrize("m, k", [(5, 2), (7, 3), (4, 1)])
    def test_idempotent_with_transversals(self, m, k):
        square, found = idempotent_with_disjoint_transversals(m, k)
        assert square.is_idempotent
        assert len(found) == k
        assert all((i, i) not in {(r, c) for r, c, _ in pt} for pt in found for i in range(m))


class TestRyser:
    def test_embeds_the_block(self):
        square = ryser_embed(RYSER_BLOCK, 7)
        assert square.n == 7
        assert np.array_equal(square.array[:5, :5], np.array(RYSER_BLOCK))

    def test_full_square_is_returned(self):
        square = ryser_embed(cyclic_square(4).array, 4)
        assert square == cyclic_square(4)

    def test_multiplicity_violation(self):
        with pytest.raises(MultiplicityViolation):
            ryser_embed([[0, 1], [1, 0]], 3)

    def test_not_latin(self):
        with pytest.raises(RowRepeat):
            ryser_embed([[0, 0], [1, 2]], 4)

    def test_bad_shape(self):
        with pytest.raises(BadParameters):
            ryser_embed([[0, 1, 2]], 3)
        with pytest.raises(BadParameters):
            ryser_embed(cyclic_square(4).array, 3)


class TestMaximalPartialTransversals:
    @pytest.mark.parametrize("n, k", FAST_PARAMETERS)
    def test_small(self, n, k):
        self._check(n, k)

    @pytest.mark.slow
    @pytest.mark.parametrize("n, k", [(n, k) for n in range(5, 13) for k in range(1, n // 2 + 1)])
    def test_every_parameter(self, n, k):
        self._check(n, k)

    @staticmethod
    def _check(n, k):
        square, pt = maximal_pt_square(n, k)
        assert square.n == n
        assert len(pt) == n - k
        assert pt.is_maximal()
        assert all(square[i, i] == i for i in range(n - k))
        assert {square[r, c] for r in range(n - k, n) for c in range(n - k, n)} == set(range(k))

    @pytest.mark.parametrize("n, k", [(4, 1), (6, 0), (7, 4)])
    def test_bad_parameters(self, n, k):
        with pytest.raises(BadParameters):
            maximal_pt_square(n, k)

    def test_relabeled_multiplicities(self):
        out = relabeled_array(5, 2)
        values, counts = np.unique(out, return_counts=True)
        multiplicity = dict(zip(values.tolist(), counts.tolist()))
        assert sorted(multiplicity) == list(range(7))
        assert all(multiplicity[s] == 5 for s in range(2))
        assert all(multiplicity[s] == 3 for s in range(2, 7))
        assert all(out[i, i] == i for i in range(5))


class TestBundles:
    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_build(self, t):
        bundle = build_t2t(t)
        n = t * t + t
        assert bundle.order == n
        assert len(bundle.cover) == 3 * t * t
        transversal = EntrySet(bundle.square, bundle.transversal)
        assert is_partial_transversal(transversal) and len(transversal) == n
        part = unique_partition(EntrySet(bundle.square, bundle.cover))
        assert part.sizes()["US"] == t * t

    @pytest.mark.parametrize("t", [0, 1, 6])
    def test_unsupported(self, t):
        with pytest.raises(Unsupported):
            build_t2t(t)

    def test_round_trip(self, tmp_path):
        bundle = build_t2t(3)
        path = save_bundle(bundle, tmp_path / "t3.bundle")
        assert load_bundle(path) == bundle

    def test_wrong_t_in_file(self, tmp_path):
        path = save_bundle(build_t2t(2), tmp_path / "t2.bundle")
        with pytest.raises(InvalidBundle):
            build_t2t(6, bundle_path=path)

    def test_tampered_cover(self, tmp_path):
        raw = build_t2t(2).to_dict()
        raw["cover"] = raw["cover"][:-1]
        path = tmp_path / "bad.bundle"
        path.write_text(json.dumps(raw), encoding="utf-8")
        with pytest.raises(InvalidBundle):
            load_bundle(path)

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.bundle"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InvalidBundle):
            load_bundle(path)
        with pytest.raises(InvalidBundle):
            ConstructionBundle.from_dict({"t": 2}, "partial")

    def test_verify_rejects_wrong_transversal(self):
        bundle = build_t2t(2)
        square = bundle.square
        shifted = tuple(square.entry(i, (i + 1) % 6) for i in range(6))
        if is_partial_transversal(EntrySet(square, shifted)):
            pytest.skip("shifted diagonal happens to be a transversal")
        with pytest.raises(InvalidBundle):
            verify_bundle(ConstructionBundle(t=2, square=square, transversal=shifted, cover=bundle.cover))


class TestCoverFamily:
    @pytest.mark.parametrize(
        "t, c",
        [
            (t, c) if t == 2 else pytest.param(t, c, marks=pytest.mark.slow)
            for t in (2, 3, 4, 5)
            for c in range(t * t + t, 3 * t * t + 1)
        ],
    )
    def test_every_size(self, t, c):
        cover = cover_family(_bundle(t), c)
        assert len(cover) == c
        assert is_minimal_cover(cover)

    @pytest.mark.slow
    def test_t2_spectrum_has_no_gap(self):
        report = minimal_cover_spectrum(_bundle(2).square, 6, 12)
        assert report.sizes == set(range(6, 13))
        assert report.gaps == []

    def test_out_of_range(self):
        bundle = build_t2t(2)
        with pytest.raises(OutOfRange):
            cover_family(bundle, 5)
        with pytest.raises(OutOfRange):
            cover_family(bundle, 13)

    def test_endpoints(self):
        bundle = build_t2t(3)
        assert set(cover_family(bundle, 12)) == set(bundle.transversal)
        assert set(cover_family(bundle, 27)) == {Entry(*e) for e in bundle.cover}
