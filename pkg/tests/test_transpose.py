import numpy as np
from hypothesis import given

from conftest import bool_images
from rlemorph import rle
from rlemorph.rle import RleImage
from rlemorph.transpose import transpose, transpose_coherent, transpose_edges, transpose_simple

ALL = (transpose_simple, transpose_coherent, transpose_edges)


def test_small_example():
    img = RleImage.from_lines(3, 2, [[(0, 2)], [(1, 3)]])
    for t in ALL:
        out = t(img)
        assert (out.width, out.height) == (2, 3)
        assert out.lines == [[(0, 1)], [(0, 2)], [(1, 2)]]


def test_empty():
    for t in ALL:
        out = t(RleImage.empty(7, 3))
        assert (out.width, out.height, out.nruns) == (3, 7, 0)


def test_solid_and_column():
    for t in ALL:
        assert t(RleImage.full(5, 9)) == RleImage.full(9, 5)
        a = np.zeros((6, 8), dtype=bool)
        a[:, 3] = True
        out = t(RleImage.from_array(a))
        assert out.line(3) == [(0, 6)] and out.nruns == 1


def test_involution_random(rng):
    for _ in range(100):
        h, w = rng.integers(1, 60, 2)
        img = RleImage.from_array(rng.random((h, w)) < rng.random())
        for t in ALL:
            assert t(t(img)) == img


def test_variants_agree(rng):
    for _ in range(500):
        h, w = rng.integers(1, 50, 2)
        a = rng.random((h, w)) < rng.random()
        if rng.random() < 0.3:
            a = np.repeat(a[: max(1, h // 4)], 4, axis=0)[:h] if h >= 4 else a
        img = RleImage.from_array(a)
        s = transpose_simple(img)
        assert np.array_equal(s.to_array(), a.T)
        assert transpose_coherent(img) == s
        assert transpose_edges(img) == s


@given(bool_images(1, 40))
def test_pixel_definition(a):
    img = RleImage.from_array(a)
    for t in ALL:
        out = t(img)
        assert rle.validate(out) is None
        assert np.array_equal(out.to_array(), a.T)


def test_default_is_edges():
    assert transpose is transpose_edges
