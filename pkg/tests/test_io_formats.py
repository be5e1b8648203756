import numpy as np
import pytest
from hypothesis import given

from conftest import bool_images
from rlemorph import rle
from rlemorph.bitblit import PackedBitmap
from rlemorph.io_formats import (FormatError, pbm_read, pbm_write, read_image, rle_text_emit,
                                 rle_text_parse, write_image)
from rlemorph.rle import RleImage

GOLDEN_P4 = b"P4\n3 2\n\xe0\x40"
GOLDEN_P1 = b"P1\n2 2\n1 0\n0 1\n"


class TestPbm:
    def test_golden_p4(self):
        img = rle.from_bitmap(pbm_read(GOLDEN_P4))
        assert img.lines == [[(1, 2)], [(0, 3)]]
        assert pbm_write(rle.to_bitmap(img)) == GOLDEN_P4

    def test_golden_p1(self):
        img = rle.from_bitmap(pbm_read(GOLDEN_P1))
        assert img.line(1) == [(0, 1)] and img.line(0) == [(1, 2)]
        assert pbm_write(rle.to_bitmap(img), "P1") == b"P1\n2 2\n10\n01\n"

    def test_comments_in_header(self):
        assert pbm_read(b"P4 # c1\n3 # c2\n# c3\n2\n\xe0\x40") == pbm_read(GOLDEN_P4)

    def test_single_black_pixel(self):
        b = PackedBitmap.from_array(np.ones((1, 1), dtype=bool))
        assert pbm_write(b) == b"P4\n1 1\n\x80"

    def test_padding_bits_zero(self):
        b = PackedBitmap.from_array(np.ones((3, 11), dtype=bool))
        body = pbm_write(b)[len(b"P4\n11 3\n"):]
        assert body == b"\xff\xe0" * 3

    def test_p1_wraps_long_rows(self):
        out = pbm_write(PackedBitmap.from_array(np.ones((1, 150), dtype=bool)), "P1")
        assert [len(x) for x in out.split(b"\n")[2:-1]] == [70, 70, 10]
        assert pbm_read(out) == PackedBitmap.from_array(np.ones((1, 150), dtype=bool))

    @pytest.mark.parametrize("data,offset", [
        (b"P5\n1 1\n\x00", 0),
        (b"P4\n3 2\n\xe0", 8),
        (b"P4\n3", 4),
        (b"P4\n70000 1\n", 3),
        (b"P1\n2 2\n1 0\n0 x\n", 13),
        (b"P1\n2 2\n1 0\n0\n", 13),
    ])
    def test_errors_carry_offset(self, data, offset):
        with pytest.raises(FormatError) as exc:
            pbm_read(data)
        assert exc.value.offset == offset

    def test_round_trip_random(self, rng):
        for _ in range(200):
            a = rng.random(tuple(rng.integers(1, 90, 2))) < rng.random()
            b = PackedBitmap.from_array(a)
            for flavor in ("P4", "P1"):
                data = pbm_write(b, flavor)
                assert pbm_read(data) == b
                assert pbm_write(pbm_read(data), flavor) == data


class TestRleText:
    def test_golden(self):
        img = RleImage.from_lines(6, 1, [[(0, 2), (3, 5)]])
        assert rle_text_emit(img) == "RLE 6 1\n2 0 2 3 5\n"
        assert rle_text_parse("RLE 6 1\n2 0 2 3 5\n") == img

    @pytest.mark.parametrize("text", [
        "RLE 4 1\n1 2 2\n",          # empty run
        "RLE 6 1\n2 0 2 2 5\n",      # touching
        "RLE 6 1\n2 3 5 0 2\n",      # descending
        "RLE 4 1\n1 2 5\n",          # beyond width
        "RLE 6 1\n2 0 2\n",          # count mismatch
        "RLE 6 2\n0\n",              # missing line
        "RLE 6 1\n0",                # no final newline
        "RLE 6 1\n0  \n",            # stray spaces
        "RLX 6 1\n0\n",
    ])
    def test_rejects(self, text):
        with pytest.raises(FormatError):
            rle_text_parse(text)

    def test_round_trip_random(self, rng):
        for _ in range(200):
            img = RleImage.from_array(rng.random(tuple(rng.integers(1, 60, 2))) < rng.random())
            text = rle_text_emit(img)
            assert rle_text_parse(text) == img
            assert rle_text_emit(rle_text_parse(text)) == text


@given(bool_images(1, 40))
def test_cross_codec(a):
    img = RleImage.from_array(a)
    via_pbm = rle.from_bitmap(pbm_read(pbm_write(rle.to_bitmap(img))))
    assert via_pbm == rle_text_parse(rle_text_emit(img))


def test_files(tmp_path, rng):
    img = RleImage.from_array(rng.random((17, 23)) < 0.4)
    for name in ("a.pbm", "b.rle"):
        write_image(tmp_path / name, img)
        assert read_image(tmp_path / name) == img
