import re

import numpy as np
import pytest

from ltoeplitz import render
from ltoeplitz.constants import Colors, Kinds, kind_codes
from ltoeplitz.structs.curve import RegionRaster

R, E, H, N = (kind_codes[kind] for kind in (Kinds.RESOLVENT, Kinds.ESSENTIAL, Kinds.HOLE, Kinds.NEAR))


@pytest.fixture
def raster() -> RegionRaster:
    codes = np.array(
        [
            [R, R, E, E],
            [R, H, H, E],
            [N, H, H, E],
            [R, R, R, R],
        ],
        dtype=np.int8,
    )
    return RegionRaster((-1.0, 1.0, -1.0, 1.0), 4, codes, np.where(codes == H, -1, 0))


def test_ppm(raster):
    data = render.to_ppm(raster)
    header = b"P6\n4 4\n255\n"
    assert data.startswith(header)
    assert len(data) == len(header) + 4 * 4 * 3

    pixels = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(4, 4, 3)
    assert tuple(pixels[0, 0]) == Colors.RESOLVENT
    assert tuple(pixels[0, 3]) == Colors.ESSENTIAL
    assert tuple(pixels[1, 1]) == Colors.HOLE
    assert tuple(pixels[2, 0]) == Colors.NEAR


def test_palette_distinguishes_kinds():
    assert len({tuple(color) for color in render.palette}) == len(Kinds.ALL)


class TestSvg:
    def test_header(self, raster):
        text = render.to_svg(raster).decode("utf-8")
        assert text.startswith('<?xml version="1.0" encoding="UTF-8"?>\n<svg ')
        assert 'viewBox="0 0 4 4"' in text
        assert text.endswith("</svg>\n")

    def test_runs(self, raster):
        text = render.to_svg(raster).decode("utf-8")
        runs = re.findall(r'<rect x="(\d+)" y="(\d+)" width="(\d+)" height="1" fill="#[0-9a-f]{6}" class="(\w+)"/>', text)
        assert runs == [
            ("2", "0", "2", Kinds.ESSENTIAL),
            ("1", "1", "2", Kinds.HOLE),
            ("3", "1", "1", Kinds.ESSENTIAL),
            ("0", "2", "1", Kinds.NEAR),
            ("1", "2", "2", Kinds.HOLE),
            ("3", "2", "1", Kinds.ESSENTIAL),
        ]

    def test_all_resolvent(self):
        codes = np.zeros((3, 3), dtype=np.int8)
        text = render.to_svg(RegionRaster((0.0, 1.0, 0.0, 1.0), 3, codes, codes.copy())).decode("utf-8")
        assert "class=" not in text
        assert text.count("<rect") == 1

    def test_hole_fill(self, raster):
        text = render.to_svg(raster).decode("utf-8")
        assert 'fill="#%02x%02x%02x" class="FredholmHole"' % Colors.HOLE in text
