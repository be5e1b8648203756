import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bool_images
from oracle import morph, rect_offsets
from rlemorph import rle
from rlemorph.morph2d import EngineChoice, RectStrategy, auto_rect_morph, rect_morph
from rlemorph.rle import RleImage

STRATEGIES = [s.value for s in RectStrategy]
KINDS = ("erode", "dilate", "open", "close")


def test_square_erode():
    a = np.zeros((20, 20), dtype=bool)
    a[5:15, 5:15] = True
    for s in STRATEGIES:
        got = rect_morph(RleImage.from_array(a), 3, 3, "erode", s).to_array()
        want = np.zeros_like(a)
        want[6:14, 6:14] = True
        assert np.array_equal(got, want)


def test_unit_identity(rng):
    img = RleImage.from_array(rng.random((15, 15)) < 0.5)
    for s in STRATEGIES:
        for k in KINDS:
            assert rect_morph(img, 1, 1, k, s) == img


def test_strategies_agree(rng):
    for _ in range(200):
        img = RleImage.from_array(rng.random((64, 64)) < rng.random())
        u, v = (int(x) for x in rng.integers(1, 9, 2))
        k = KINDS[int(rng.integers(0, 4))]
        ref = rect_morph(img, u, v, k, "mixed-within-between")
        assert rle.validate(ref) is None
        for s in STRATEGIES:
            assert rect_morph(img, u, v, k, s) == ref, (s, u, v, k)


def test_bad_size():
    with pytest.raises(ValueError):
        rect_morph(RleImage.empty(3, 3), 1, 0, "erode")


def test_auto_engine_choice(rng):
    img = RleImage.from_array(rng.random((40, 40)) < 0.6)
    out, engine = auto_rect_morph(img, 3, 3, "open", EngineChoice("auto", 5))
    assert engine == "bitblit"
    assert out == rect_morph(img, 3, 3, "open")
    out, engine = auto_rect_morph(img, 20, 20, "close", EngineChoice("auto", 5))
    assert engine == "rle"
    assert out == rect_morph(img, 20, 20, "close")
    assert auto_rect_morph(img, 3, 3, "erode", EngineChoice("rle"))[1] == "rle"
    assert auto_rect_morph(img, 30, 3, "erode", EngineChoice("bitblit"))[1] == "bitblit"


@given(bool_images(1, 30), st.integers(1, 7), st.integers(1, 7), st.sampled_from(STRATEGIES))
def test_oracle(a, u, v, strategy):
    img = RleImage.from_array(a)
    for k in KINDS:
        got = rect_morph(img, u, v, k, strategy).to_array()
        assert np.array_equal(got, morph(a, rect_offsets(u, v), k))


@given(bool_images(1, 30), st.integers(1, 7), st.integers(1, 7))
def test_separable(a, u, v):
    img = RleImage.from_array(a)
    for k in ("erode", "dilate"):
        assert rect_morph(img, u, v, k) == rect_morph(rect_morph(img, 1, v, k), u, 1, k)
