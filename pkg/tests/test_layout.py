import numpy as np
import pytest

from rlemorph import rle
from rlemorph.layout import LayoutConfig, Spacing, estimate_spacing, layout_blocks
from rlemorph.rle import RleImage
from rlemorph.synth import GridSpec, PageConfig, document_page, grid_corpus, text_grid


def test_grid_spacing_and_blocks():
    img, boxes = text_grid(GridSpec())
    assert estimate_spacing(img) == Spacing(3, 4)
    assert layout_blocks(img) == boxes
    assert len(boxes) == 4


@pytest.mark.parametrize("spec", grid_corpus(), ids=lambda s: f"w{s.word_gap}l{s.line_gap}c{s.clusters_x}x{s.clusters_y}")
@pytest.mark.parametrize("engine", ["rle", "bitblit"])
def test_grid_corpus(spec, engine):
    img, boxes = text_grid(spec)
    cfg = LayoutConfig(engine=engine)
    assert estimate_spacing(img, cfg) == Spacing(spec.word_gap, spec.line_gap)
    assert layout_blocks(img, cfg) == boxes


def test_blank_and_solid_pages_rejected():
    with pytest.raises(ValueError):
        estimate_spacing(RleImage.empty(50, 50))
    with pytest.raises(ValueError):
        estimate_spacing(RleImage.full(50, 50))


def test_translation_invariant():
    img, _ = text_grid(GridSpec())
    moved = rle.shift(img, 7, -11)
    assert estimate_spacing(moved) == estimate_spacing(img)


def test_single_block():
    a = np.zeros((60, 80), dtype=bool)
    a[10:30, 20:50] = True
    img = RleImage.from_array(a)
    # a solid block has no interior gaps, so spacing must be supplied
    with pytest.raises(ValueError):
        layout_blocks(img)
    assert layout_blocks(img, spacing=Spacing(3, 3)) == [(20, 10, 50, 30)]


def test_box_count_monotone_in_spacing():
    img = document_page(np.random.default_rng(3), PageConfig(width=700, height=600, margin=40))
    counts = [len(layout_blocks(img, spacing=Spacing(w, w))) for w in (2, 5, 10, 20, 40)]
    assert counts == sorted(counts, reverse=True)


def test_boxes_cover_and_deterministic():
    rng = np.random.default_rng(8)
    cfg = PageConfig(width=800, height=700, margin=40, columns=2)
    img = document_page(rng, cfg)
    boxes = layout_blocks(img)
    assert boxes == layout_blocks(img)
    covered = np.zeros((img.height, img.width), dtype=bool)
    for x0, y0, x1, y1 in boxes:
        covered[y0:y1, x0:x1] = True
    assert not (img.to_array() & ~covered).any()
