"""Binary image morphology and analysis on run-length encoded images."""
from .analysis import (ComponentStats, Connectivity, LabelMap, component_stats, label_components,
                       lag_edges, runlength_histograms)
from .arbitrary import arb_morph_bitblit_doubling, arb_morph_rle, line_angle_morph, morph_se
from .bitblit import (BlitCounter, BoolOp, PackedBitmap, bitblit_rect_morph, blit_shift,
                      brute_force_morph)
from .geometry import rotate, scale, skew_h
from .io_formats import FormatError, pbm_read, pbm_write, rle_text_emit, rle_text_parse
from .layout import LayoutConfig, estimate_spacing, layout_blocks
from .lineops import image_bool, image_shift_bool, line_bool
from .morph1d import within_line_erode_dilate, within_line_open_close
from .morph2d import EngineChoice, RectStrategy, auto_rect_morph, rect_morph
from .rle import (RleImage, Violation, complement, from_bitmap, pixel_count, storage_bytes,
                  to_bitmap, validate)
from .structuring import StructuringElement, make_circle_se, make_rect_se, skew_line_se
from .transpose import transpose, transpose_coherent, transpose_simple

__all__ = [
    "ComponentStats", "Connectivity", "LabelMap", "component_stats", "label_components",
    "lag_edges", "runlength_histograms", "arb_morph_bitblit_doubling", "arb_morph_rle",
    "line_angle_morph", "morph_se", "BlitCounter", "BoolOp", "PackedBitmap", "bitblit_rect_morph",
    "blit_shift", "brute_force_morph", "rotate", "scale", "skew_h", "FormatError", "pbm_read",
    "pbm_write", "rle_text_emit", "rle_text_parse", "LayoutConfig", "estimate_spacing",
    "layout_blocks", "image_bool", "image_shift_bool", "line_bool", "within_line_erode_dilate",
    "within_line_open_close", "EngineChoice", "RectStrategy", "auto_rect_morph", "rect_morph",
    "RleImage", "Violation", "complement", "from_bitmap", "pixel_count", "storage_bytes",
    "to_bitmap", "validate", "StructuringElement", "make_circle_se", "make_rect_se", "skew_line_se",
    "transpose", "transpose_coherent", "transpose_simple",
]

__version__ = "0.1.0"
