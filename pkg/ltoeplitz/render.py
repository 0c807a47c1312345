"""
Portable pixmap and SVG renderings of classification rasters
"""

import numpy as np

from ltoeplitz.constants import Kinds, kind_colors
from ltoeplitz.structs.curve import RegionRaster

palette = np.array([kind_colors[kind] for kind in Kinds.ALL], dtype=np.uint8)


def to_ppm(raster: RegionRaster) -> bytes:
    """Binary P6, one pixel per grid node, top row first."""
    size = raster.resolution
    header = f"P6\n{size} {size}\n255\n".encode("ascii")
    return header + palette[raster.codes].tobytes()


def _runs(row: np.ndarray):
    start = 0
    for col in range(1, row.size + 1):
        if col == row.size or row[col] != row[start]:
            yield start, col - start, int(row[start])
            start = col


def to_svg(raster: RegionRaster) -> bytes:
    """One rect per horizontal run of equal kind; resolvent runs are left to the background."""
    size = raster.resolution
    background = "#%02x%02x%02x" % kind_colors[Kinds.RESOLVENT]
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" shape-rendering="crispEdges">',
        f'<rect width="{size}" height="{size}" fill="{background}"/>',
    ]
    for row in range(size):
        for col, length, code in _runs(raster.codes[row]):
            if Kinds.ALL[code] == Kinds.RESOLVENT:
                continue
            fill = "#%02x%02x%02x" % tuple(int(c) for c in palette[code])
            lines.append(
                f'<rect x="{col}" y="{row}" width="{length}" height="1" fill="{fill}" '
                f'class="{Kinds.ALL[code]}"/>'
            )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
