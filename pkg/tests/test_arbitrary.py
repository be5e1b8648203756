import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bool_images
from oracle import morph, se_offsets
from rlemorph import rle
from rlemorph.arbitrary import arb_morph_bitblit_doubling, arb_morph_rle, line_angle_morph, morph_se
from rlemorph.bitblit import BlitCounter, PackedBitmap, brute_force_morph
from rlemorph.morph1d import within_line_erode_dilate
from rlemorph.rle import RleImage
from rlemorph.structuring import (StructuringElement, corrected_line_length, make_circle_se,
                                  make_rect_se, skew_line_se)


def widths(se):
    return [sum(e - s for s, e in se.mask.line(y)) for y in range(se.mask.height)]


class TestCircle:
    def test_radius_one(self):
        se = make_circle_se(1)
        assert widths(se) == [1, 3, 1] and se.origin == (1, 1)

    def test_radius_two(self):
        assert widths(make_circle_se(2)) == [1, 3, 5, 3, 1]

    @pytest.mark.parametrize("r", range(1, 21))
    def test_enumeration(self, r):
        se = make_circle_se(r)
        assert se.mask.height == 2 * r + 1
        assert all(len(se.mask.line(y)) == 1 for y in range(2 * r + 1))
        ys, xs = np.mgrid[-r:r + 1, -r:r + 1]
        assert np.array_equal(se.mask.to_array(), xs ** 2 + ys ** 2 <= r * r)

    def test_bad_radius(self):
        with pytest.raises(ValueError):
            make_circle_se(0)


def random_se(rng, max_side=11):
    mh, mw = (int(x) for x in rng.integers(1, max_side + 1, 2))
    m = rng.random((mh, mw)) < rng.uniform(0.2, 0.9)
    m[int(rng.integers(0, mh)), int(rng.integers(0, mw))] = True
    origin = (int(rng.integers(0, mw)), int(rng.integers(0, mh)))
    return StructuringElement.from_array(m, origin), m, origin


def test_single_run_degenerates_to_within_line(rng):
    img = RleImage.from_array(rng.random((20, 30)) < 0.6)
    se = make_rect_se(3, 1)
    for k in ("erode", "dilate"):
        assert arb_morph_rle(img, se, k) == within_line_erode_dilate(img, 3, k)


def test_circle_erodes_square():
    a = np.zeros((30, 30), dtype=bool)
    a[5:25, 5:25] = True
    se = make_circle_se(3)
    want = brute_force_morph(PackedBitmap.from_array(a), se, "erode")
    assert arb_morph_rle(RleImage.from_array(a), se, "erode") == rle.from_bitmap(want)


def test_engines_match_oracle(rng):
    for _ in range(60):
        se, m, origin = random_se(rng)
        a = rng.random(tuple(rng.integers(8, 50, 2))) < rng.random()
        img, packed = RleImage.from_array(a), PackedBitmap.from_array(a)
        for k in ("erode", "dilate", "open", "close"):
            want = morph(a, se_offsets(m, origin), k)
            assert np.array_equal(morph_se(img, se, k, "rle").to_array(), want), k
            assert np.array_equal(morph_se(packed, se, k, "bitblit").to_array(), want), k


def test_circle_five_bitblit(rng):
    se = make_circle_se(5)
    for _ in range(10):
        p = PackedBitmap.from_array(rng.random((64, 64)) < rng.random())
        for k in ("erode", "dilate"):
            assert arb_morph_bitblit_doubling(p, se, k) == brute_force_morph(p, se, k)


def test_unit_se_identity(rng):
    p = PackedBitmap.from_array(rng.random((10, 70)) < 0.5)
    c = BlitCounter()
    assert arb_morph_bitblit_doubling(p, make_rect_se(1, 1), "erode", c) == p
    assert c.bool_ops == 0 and c.copies == 1


def test_circle_counts_frozen():
    """Measured op counts of the doubling accumulation (bool ops, copies)."""
    got = {}
    for r in (1, 2, 3, 5, 10, 20):
        c = BlitCounter()
        arb_morph_bitblit_doubling(PackedBitmap(50, 50), make_circle_se(r), "erode", c)
        got[r] = (c.bool_ops, c.copies)
    assert got == {1: (4, 1), 2: (9, 1), 3: (13, 1), 5: (22, 1), 10: (43, 1), 20: (84, 1)}


def test_empty_kind_rejected():
    with pytest.raises(ValueError):
        arb_morph_rle(RleImage.empty(4, 4), make_rect_se(2, 2), "open-ish")


class TestAngledLine:
    def test_corrected_length(self):
        assert corrected_line_length(5, math.pi / 4) == 7
        assert corrected_line_length(5, 0.0) == 10

    def test_angle_zero_is_horizontal(self, rng):
        img = RleImage.from_array(rng.random((20, 40)) < 0.6)
        for k in ("erode", "dilate"):
            assert line_angle_morph(img, 4, 0.0, k) == within_line_erode_dilate(img, 8, k)

    @pytest.mark.parametrize("angle", [-math.pi / 4, 0.0, math.pi / 4])
    @pytest.mark.parametrize("r", [2, 5, 9])
    def test_exact_at_lattice_angles(self, rng, angle, r):
        se = skew_line_se(r, angle)
        for _ in range(10):
            a = rng.random((40, 50)) < rng.uniform(0.3, 0.95)
            img, packed = RleImage.from_array(a), PackedBitmap.from_array(a)
            for k in ("erode", "dilate"):
                want = brute_force_morph(packed, se, k)
                assert line_angle_morph(img, r, angle, k) == rle.from_bitmap(want)
                assert line_angle_morph(packed, r, angle, k) == want

    def test_self_erosion_leaves_anchor(self):
        se = skew_line_se(5, math.pi / 4)
        m = se.mask.to_array()
        pad = np.zeros((m.shape[0] + 4, m.shape[1] + 4), dtype=bool)
        pad[2:-2, 2:-2] = m
        got = brute_force_morph(PackedBitmap.from_array(pad), se, "erode").to_array()
        assert np.argwhere(got).tolist() == [[se.origin[1] + 2, se.origin[0] + 2]]

    def test_range_checked(self):
        with pytest.raises(ValueError):
            line_angle_morph(RleImage.empty(5, 5), 2, 1.0, "erode")


@given(bool_images(1, 24), st.integers(0, 2 ** 32 - 1))
def test_arbitrary_property(a, seed):
    se, m, origin = random_se(np.random.default_rng(seed), 7)
    img = RleImage.from_array(a)
    for k in ("erode", "dilate"):
        want = morph(a, se_offsets(m, origin), k)
        assert np.array_equal(arb_morph_rle(img, se, k).to_array(), want)
        assert np.array_equal(arb_morph_bitblit_doubling(PackedBitmap.from_array(a), se, k).to_array(),
                              want)
