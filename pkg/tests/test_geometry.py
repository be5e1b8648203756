import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bool_images
from rlemorph import rle
from rlemorph.geometry import center_crop, rotate, scale, skew_h, skew_offset
from rlemorph.rle import RleImage, pixel_count
from rlemorph.synth import random_blobs

slopes = st.fractions(min_value=-3, max_value=3, max_denominator=8)


def test_scale_examples():
    a = RleImage.from_lines(4, 1, [[(1, 3)]])
    assert scale(a, 1, 1) == a
    up = scale(a, 2, 2)
    assert (up.width, up.height) == (8, 2) and up.lines == [[(2, 6)], [(2, 6)]]
    assert scale(up, Fraction(1, 2), "1/2") == a


def test_scale_rejects_overflow():
    with pytest.raises(OverflowError):
        scale(RleImage.empty(40000, 1), 2, 1)


@given(bool_images(1, 20), st.integers(1, 4), st.integers(1, 4))
def test_integer_upscale_is_block_replication(a, fx, fy):
    got = scale(RleImage.from_array(a), fx, fy).to_array()
    assert np.array_equal(got, np.kron(a, np.ones((fy, fx), dtype=bool)))
    assert got.sum() == a.sum() * fx * fy


def test_skew_examples():
    col = RleImage.from_lines(1, 3, [[(0, 1)]] * 3)
    assert skew_h(col, 0) == col
    out = skew_h(col, 1)
    assert out.width == 4 and out.lines == [[(0, 1)], [(1, 2)], [(2, 3)]]


@given(bool_images(1, 25), slopes)
def test_skew_pixel_map_and_inverse(a, s):
    img = RleImage.from_array(a)
    out = skew_h(img, s)
    assert out.nruns == img.nruns
    assert out.width == img.width + math.ceil(abs(s) * img.height)
    off = skew_offset(img.height, s)
    got = out.to_array()
    for y in range(img.height):
        d = off + rle.round_half_away(s * y)
        assert np.array_equal(got[y, d:d + img.width], a[y])
    back = skew_h(out, -s)
    assert rle.crop(back, skew_offset(img.height, -s) + off, 0, img.width, img.height) == img


def test_rotate_zero_identity(rng):
    img = random_blobs(rng, 40, 30)
    assert rotate(img, 0.0) == img


def test_rotate_preserves_count_and_round_trips(rng):
    worst = 1.0
    for theta in (0.05, 0.2, -0.5, math.pi / 4, -math.pi / 4, 0.7):
        for _ in range(4):
            img = random_blobs(rng, 64, 64)
            r = rotate(img, theta)
            assert pixel_count(r) == pixel_count(img)
            back = center_crop(rotate(r, -theta), 64, 64)
            worst = min(worst, float((back.to_array() == img.to_array()).mean()))
    assert worst >= 0.99


def test_rotated_block_centroid():
    a = np.zeros((64, 64), dtype=bool)
    a[40:45, 10:15] = True
    r = rotate(RleImage.from_array(a), 0.2).to_array()
    ys, xs = np.nonzero(r)
    cx, cy = xs.mean() + 0.5, ys.mean() + 0.5
    c = r.shape[0] / 2
    x0, y0 = 12.5 - 32, 42.5 - 32
    ex = c + x0 * math.cos(0.2) - y0 * math.sin(0.2)
    ey = c + x0 * math.sin(0.2) + y0 * math.cos(0.2)
    assert math.hypot(cx - ex, cy - ey) < 1.0


def test_rotate_range():
    with pytest.raises(ValueError):
        rotate(RleImage.empty(4, 4), 1.0)
