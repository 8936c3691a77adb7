"""Final rasters: the composited collage and the canvas-usage diagnostic.

Visibility follows exactly the ownership rules of layout.rasterize; only
the color lookup differs. The collage samples source images bilinearly
so rotations don't alias; the usage view gives every image a flat
palette color whose brightness tracks the visible saliency.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from stereo_collage.layout import BLANK, Canvas, Placement, VisibilityRaster, _iter_frames
from stereo_collage.saliency import SaliencyMap

__all__ = ["PALETTE", "render_collage", "render_usage"]

# 16 visually distinct flat colors; image i uses PALETTE[i % 16].
PALETTE = np.array(
    [
        (230, 25, 75),
        (60, 180, 75),
        (255, 225, 25),
        (0, 130, 200),
        (245, 130, 48),
        (145, 30, 180),
        (70, 240, 240),
        (240, 50, 230),
        (210, 245, 60),
        (250, 190, 212),
        (0, 128, 128),
        (220, 190, 255),
        (170, 110, 40),
        (255, 250, 200),
        (128, 0, 0),
        (170, 255, 195),
    ],
    dtype=np.float64,
)


def _bilinear(img: np.ndarray, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Sample img (h, w, 3) at continuous pixel-center coords, clamped."""
    h, w = img.shape[:2]
    gx = np.clip(gx, 0.0, w - 1.0)
    gy = np.clip(gy, 0.0, h - 1.0)
    x0 = np.floor(gx).astype(np.int64)
    y0 = np.floor(gy).astype(np.int64)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = (gx - x0)[..., None]
    fy = (gy - y0)[..., None]
    top = (1.0 - fx) * img[y0, x0] + fx * img[y0, x1]
    bottom = (1.0 - fx) * img[y1, x0] + fx * img[y1, x1]
    return (1.0 - fy) * top + fy * bottom


def render_collage(
    placements: Sequence[Placement],
    canvas: Canvas,
    images: Sequence[np.ndarray],
    background: tuple[int, int, int] = (128, 128, 128),
) -> np.ndarray:
    """Composite the layout into an (side, side, 3) uint8 raster.

    images are (h, w, 3) color arrays. Pixels no image covers take the
    background color.
    """
    side = canvas.side
    dims = [(img.shape[1], img.shape[0]) for img in images]
    out = np.empty((side, side, 3), dtype=np.float64)
    out[:] = np.asarray(background, dtype=np.float64)
    owned = np.zeros((side, side), dtype=bool)
    for p, (y0, y1, x0, x1), qx, qy, half_w, half_h in _iter_frames(placements, side, dims):
        region_owned = owned[y0:y1, x0:x1]
        claim = (np.abs(qx) <= half_w) & (np.abs(qy) <= half_h) & ~region_owned
        if not claim.any():
            continue
        img = np.asarray(images[p.image_id], dtype=np.float64)
        gx = qx[claim] + half_w - 0.5
        gy = qy[claim] + half_h - 0.5
        out[y0:y1, x0:x1][claim] = _bilinear(img, gx, gy)
        region_owned[claim] = True
    return np.rint(np.clip(out, 0.0, 255.0)).astype(np.uint8)


def render_usage(raster: VisibilityRaster, saliency: Sequence[SaliencyMap]) -> np.ndarray:
    """Ownership diagnostic: flat palette color per image, black for BLANK.

    Brightness scales with the saliency visible at each pixel's source
    coordinate: weight 0 shows at 30% brightness, weight 1 at 100%.
    """
    side = raster.side
    out = np.zeros((side, side, 3), dtype=np.float64)
    for i, sal in enumerate(saliency):
        mask = raster.owner == i
        if not mask.any():
            continue
        weights = sal.data[raster.src_y[mask], raster.src_x[mask]]
        brightness = 0.3 + 0.7 * weights
        out[mask] = PALETTE[i % len(PALETTE)] * brightness[:, None]
    return np.rint(out).astype(np.uint8)
