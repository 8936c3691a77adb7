"""Per-pixel importance weights.

Stereo inputs get depth-derived saliency (larger disparity = closer =
more important); mono inputs fall back to local contrast. Both paths
min-max normalize to [0, 1], and a map with no dynamic range becomes
all-ones so every image keeps positive total saliency.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from stereo_collage.stereo import DisparityMap, GrayImage

__all__ = ["SaliencyMap", "depth_to_saliency", "contrast_saliency"]


@dataclass(frozen=True, eq=False)
class SaliencyMap:
    """Nonnegative importance weights in [0, 1] with a cached sum."""

    data: np.ndarray
    total: float = field(init=False)

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("SaliencyMap needs a nonempty 2-D raster")
        if not np.isfinite(arr).all():
            raise ValueError("SaliencyMap contains non-finite values")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("saliency weights must lie in [0, 1]")
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "total", float(arr.sum()))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def as_u8(self) -> np.ndarray:
        """Export as an 8-bit grayscale raster (weight * 255, rounded)."""
        return np.rint(self.data * 255.0).astype(np.uint8)


def _median_filter(values: np.ndarray, radius: int) -> np.ndarray:
    if radius <= 0:
        return values
    size = 2 * radius + 1
    padded = np.pad(values, radius, mode="edge")
    windows = sliding_window_view(padded, (size, size))
    return np.median(windows, axis=(2, 3))


def _min_max(values: np.ndarray) -> np.ndarray:
    lo = values.min()
    hi = values.max()
    if hi == lo:
        return np.ones(values.shape, dtype=np.float64)
    return (values - lo) / (hi - lo)


def depth_to_saliency(disp: DisparityMap, median_radius: int = 1) -> SaliencyMap:
    """Disparity to importance: median-filter (radius 0 = off), then min-max.

    The median pass suppresses the horizontal streaks that independent
    scanline optimization tends to leave. Borders clamp to the edge.
    """
    filtered = _median_filter(disp.data.astype(np.float64), median_radius)
    return SaliencyMap(_min_max(filtered))


def contrast_saliency(image: GrayImage, block: int = 16) -> SaliencyMap:
    """Mono-image fallback: per-tile standard deviation of luminance.

    The image is partitioned into block x block tiles (edge tiles may be
    ragged), each tile scores its luminance std, the scores are spread
    back over the tile's pixels and min-max normalized like
    depth_to_saliency.
    """
    if block < 2:
        raise ValueError("block must be >= 2")
    height, width = image.data.shape
    scores = np.empty((height, width), dtype=np.float64)
    for ty in range(0, height, block):
        for tx in range(0, width, block):
            tile = image.data[ty : ty + block, tx : tx + block]
            scores[ty : ty + block, tx : tx + block] = tile.std()
    return SaliencyMap(_min_max(scores))
