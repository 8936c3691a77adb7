"""Placement model and layered visibility rasterization.

A layout is a list of placements (center, rotation, layer key) over a
square canvas. Rasterization decides, per canvas pixel, which placement
is visible: placements are tested top-down (higher layer_key first, ties
to the lower image id), each pixel center is inverse-rotated into the
image frame, and the first axis-aligned rectangle containing it claims
the pixel with nearest-neighbour source coordinates. Anything outside
the canvas is implicitly cropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from stereo_collage.saliency import SaliencyMap

__all__ = [
    "BLANK",
    "Canvas",
    "Placement",
    "VisibilityRaster",
    "canvas_for",
    "rasterize",
    "visible_mass",
]

BLANK = -1


@dataclass(frozen=True)
class Canvas:
    """Square canvas, side in pixels."""

    side: int

    def __post_init__(self) -> None:
        if self.side < 1:
            raise ValueError("canvas side must be >= 1")


@dataclass(frozen=True)
class Placement:
    """One image's pose: center (cx, cy), rotation theta, stacking key."""

    image_id: int
    cx: float
    cy: float
    theta: float
    layer_key: float


@dataclass(frozen=True, eq=False)
class VisibilityRaster:
    """Per-canvas-pixel owner (image id or BLANK) plus source coordinates."""

    owner: np.ndarray
    src_x: np.ndarray
    src_y: np.ndarray

    @property
    def side(self) -> int:
        return self.owner.shape[0]


def canvas_for(dims: Sequence[tuple[int, int]], area_ratio: float) -> Canvas:
    """Canvas sized so its area is area_ratio times the summed image area.

    side = floor(sqrt(area_ratio * sum(w * h))), at least 1.
    """
    if not dims:
        raise ValueError("need at least one image to size the canvas")
    if area_ratio <= 0:
        raise ValueError("area_ratio must be > 0")
    total = sum(w * h for w, h in dims)
    side = math.isqrt(math.floor(area_ratio * total))
    return Canvas(max(1, side))


def _iter_frames(
    placements: Sequence[Placement],
    side: int,
    dims: Sequence[tuple[int, int]],
) -> Iterator[tuple[Placement, tuple[int, int, int, int], np.ndarray, np.ndarray, float, float]]:
    """Top-down placement frames clipped to the canvas.

    Yields (placement, (y0, y1, x0, x1), qx, qy, half_w, half_h) where
    qx/qy are pixel-center coordinates inside that window mapped into the
    image frame (origin at the image center, rotation undone). The window
    covers the rotated rectangle's bounding box plus a safety pixel.
    """
    for p in sorted(placements, key=lambda q: (-q.layer_key, q.image_id)):
        if not 0 <= p.image_id < len(dims):
            raise ValueError(f"placement references unknown image {p.image_id}")
        w, h = dims[p.image_id]
        half_w, half_h = w / 2.0, h / 2.0
        cos_t = math.cos(p.theta)
        sin_t = math.sin(p.theta)
        ext_x = half_w * abs(cos_t) + half_h * abs(sin_t)
        ext_y = half_w * abs(sin_t) + half_h * abs(cos_t)
        x0 = max(0, int(math.floor(p.cx - ext_x)) - 1)
        x1 = min(side, int(math.ceil(p.cx + ext_x)) + 1)
        y0 = max(0, int(math.floor(p.cy - ext_y)) - 1)
        y1 = min(side, int(math.ceil(p.cy + ext_y)) + 1)
        if x0 >= x1 or y0 >= y1:
            continue
        dx = np.arange(x0, x1, dtype=np.float64) + 0.5 - p.cx
        dy = np.arange(y0, y1, dtype=np.float64) + 0.5 - p.cy
        qx = cos_t * dx[None, :] + sin_t * dy[:, None]
        qy = -sin_t * dx[None, :] + cos_t * dy[:, None]
        yield p, (y0, y1, x0, x1), qx, qy, half_w, half_h


def rasterize(
    placements: Sequence[Placement],
    canvas: Canvas,
    dims: Sequence[tuple[int, int]],
) -> VisibilityRaster:
    """Resolve per-pixel visibility for a layered layout.

    dims lists each image's (width, height). Every canvas pixel ends up
    owned by exactly one image or BLANK.
    """
    side = canvas.side
    owner = np.full((side, side), BLANK, dtype=np.int32)
    src_x = np.zeros((side, side), dtype=np.int32)
    src_y = np.zeros((side, side), dtype=np.int32)
    for p, (y0, y1, x0, x1), qx, qy, half_w, half_h in _iter_frames(placements, side, dims):
        w, h = dims[p.image_id]
        region = owner[y0:y1, x0:x1]
        claim = (np.abs(qx) <= half_w) & (np.abs(qy) <= half_h) & (region == BLANK)
        if not claim.any():
            continue
        sx = np.clip(np.floor(qx + half_w), 0, w - 1).astype(np.int32)
        sy = np.clip(np.floor(qy + half_h), 0, h - 1).astype(np.int32)
        region[claim] = p.image_id
        src_x[y0:y1, x0:x1][claim] = sx[claim]
        src_y[y0:y1, x0:x1][claim] = sy[claim]
    return VisibilityRaster(owner, src_x, src_y)


def visible_mass(raster: VisibilityRaster, saliency: Sequence[SaliencyMap]) -> np.ndarray:
    """Per-image sum of saliency over the pixels each image owns.

    Images owning no pixel get 0. Sums are taken at the raster's source
    coordinates, one term per owned canvas pixel.
    """
    count = len(saliency)
    if int(raster.owner.max(initial=BLANK)) >= count:
        raise ValueError("raster references an image with no saliency map")
    masses = np.zeros(count, dtype=np.float64)
    for i, sal in enumerate(saliency):
        mask = raster.owner == i
        if mask.any():
            masses[i] = float(sal.data[raster.src_y[mask], raster.src_x[mask]].sum())
    return masses
