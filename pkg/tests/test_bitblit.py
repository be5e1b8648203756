import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bool_images
from oracle import morph, rect_offsets, se_offsets
from rlemorph.bitblit import (BlitCounter, BoolOp, PackedBitmap, bitblit_rect_morph, blit_shift,
                              brute_force_morph)
from rlemorph.structuring import StructuringElement, make_rect_se


def row(bits: str) -> PackedBitmap:
    return PackedBitmap.from_array(np.array([[c == "1" for c in bits]]))


def bits(b: PackedBitmap) -> str:
    return "".join("1" if v else "0" for v in b.to_array()[0])


class TestBlitShift:
    def test_aliased_and_right(self):
        d = row("11110000")
        blit_shift(d, d, 2, 0, BoolOp.AND)
        assert bits(d) == "00110000"

    def test_aliased_and_left(self):
        d = row("11110000")
        blit_shift(d, d, -1, 0, BoolOp.AND)
        assert bits(d) == "11100000"

    def test_or_self_unchanged(self, rng):
        a = rng.random((9, 130)) < 0.5
        d = PackedBitmap.from_array(a)
        blit_shift(d, d, 0, 0, BoolOp.OR)
        assert np.array_equal(d.to_array(), a)

    @pytest.mark.parametrize("op", list(BoolOp))
    def test_per_pixel(self, rng, op):
        for _ in range(20):
            h, w = rng.integers(1, 20), rng.integers(1, 150)
            a, b = rng.random((2, h, w)) < 0.5
            dx, dy = int(rng.integers(-w - 2, w + 2)), int(rng.integers(-h - 2, h + 2))
            src = np.zeros_like(b)
            ys, xs = np.nonzero(b)
            keep = (xs + dx >= 0) & (xs + dx < w) & (ys + dy >= 0) & (ys + dy < h)
            src[ys[keep] + dy, xs[keep] + dx] = True
            want = {BoolOp.AND: a & src, BoolOp.OR: a | src, BoolOp.XOR: a ^ src,
                    BoolOp.ANDNOT: a & ~src, BoolOp.ORNOT: a | ~src}[op]
            d = PackedBitmap.from_array(a)
            blit_shift(d, PackedBitmap.from_array(b), dx, dy, op)
            assert np.array_equal(d.to_array(), want)
            # padding bits stay clear
            assert d == PackedBitmap.from_array(want)

    def test_zero_src_or_identity(self, rng):
        a = rng.random((5, 70)) < 0.5
        d = PackedBitmap.from_array(a)
        blit_shift(d, PackedBitmap(70, 5), 3, 1, BoolOp.OR)
        assert np.array_equal(d.to_array(), a)


class TestBruteForce:
    def test_single_pixel_identity(self, rng):
        a = rng.random((20, 20)) < 0.5
        got = brute_force_morph(PackedBitmap.from_array(a), make_rect_se(1, 1), "erode")
        assert np.array_equal(got.to_array(), a)

    def test_dilate_point(self):
        a = np.zeros((12, 12), dtype=bool)
        a[5, 5] = True
        got = brute_force_morph(PackedBitmap.from_array(a), make_rect_se(3, 3), "dilate").to_array()
        want = np.zeros_like(a)
        want[4:7, 4:7] = True
        assert np.array_equal(got, want)

    def test_erode_run_by_four(self):
        a = np.zeros((1, 30), dtype=bool)
        a[0, 5:15] = True
        got = brute_force_morph(PackedBitmap.from_array(a), make_rect_se(4, 1), "erode").to_array()
        assert np.flatnonzero(got[0]).tolist() == list(range(7, 14))

    def test_empty_se_rejected(self):
        with pytest.raises(ValueError):
            StructuringElement.from_array(np.zeros((3, 3), dtype=bool), (1, 1))

    def test_matches_oracle_random_masks(self, rng):
        for _ in range(30):
            mh, mw = rng.integers(1, 8, 2)
            m = rng.random((mh, mw)) < 0.5
            m[0, 0] = True
            origin = (int(rng.integers(0, mw)), int(rng.integers(0, mh)))
            se = StructuringElement.from_array(m, origin)
            a = rng.random((25, 40)) < rng.random()
            for kind in ("erode", "dilate", "open", "close"):
                got = brute_force_morph(PackedBitmap.from_array(a), se, kind).to_array()
                assert np.array_equal(got, morph(a, se_offsets(m, origin), kind)), kind


class TestRectMorph:
    def test_identity(self, rng):
        a = rng.random((10, 10)) < 0.5
        for kind in ("erode", "dilate", "open", "close"):
            got = bitblit_rect_morph(PackedBitmap.from_array(a), 1, 1, kind)
            assert np.array_equal(got.to_array(), a)

    def test_equals_brute_force(self, rng):
        for _ in range(50):
            a = rng.random((48, 48)) < rng.random()
            p = PackedBitmap.from_array(a)
            for u in range(1, 10):
                v = int(rng.integers(1, 10))
                kind = ("erode", "dilate", "open", "close")[u % 4]
                want = brute_force_morph(p, make_rect_se(u, v), kind)
                for c in ("pre-shift", "border-friendly"):
                    assert bitblit_rect_morph(p, u, v, kind, c) == want, (u, v, kind, c)

    def test_bad_size(self):
        with pytest.raises(ValueError):
            bitblit_rect_morph(PackedBitmap(4, 4), 0, 1, "erode")

    def test_nineteen_counts(self):
        p = PackedBitmap.from_array(np.ones((3, 40), dtype=bool))
        pre, bf = BlitCounter(), BlitCounter()
        a = bitblit_rect_morph(p, 19, 1, "erode", "pre-shift", pre)
        b = bitblit_rect_morph(p, 19, 1, "erode", "border-friendly", bf)
        assert a == b
        assert pre.bool_ops == 5 and pre.shifts == 1
        assert bf.bool_ops == 6 and bf.shifts == 0

    @pytest.mark.parametrize("r", range(2, 70))
    def test_doubling_bound(self, r):
        p = PackedBitmap(80, 2)
        pre, bf = BlitCounter(), BlitCounter()
        bitblit_rect_morph(p, r, 1, "erode", "pre-shift", pre)
        bitblit_rect_morph(p, r, 1, "erode", "border-friendly", bf)
        bound = int(np.ceil(np.log2(r))) + 1
        assert pre.bool_ops <= bound
        assert bf.bool_ops <= bound + 1


def test_published_8l0_decomposition_costs_nine_blits():
    """The 17-pixel line factored into four sparse SEs uses 9 blits; doubling needs fewer."""
    factors = [[0, 1, 2], [0, 2], [0, 4], [0, 8]]
    cover = {0}
    for f in factors:
        cover = {c + d for c in cover for d in f}
    assert cover == set(range(17))
    assert sum(len(f) for f in factors) == 9
    c = BlitCounter()
    bitblit_rect_morph(PackedBitmap(40, 1), 17, 1, "erode", "pre-shift", c)
    assert c.bool_ops + c.shifts < 9


@given(bool_images(1, 30), st.integers(1, 6), st.integers(1, 6))
def test_rect_vs_oracle(a, u, v):
    for kind in ("erode", "dilate"):
        got = bitblit_rect_morph(PackedBitmap.from_array(a), u, v, kind).to_array()
        assert np.array_equal(got, morph(a, rect_offsets(u, v), kind))
