"""Scanline dynamic-programming stereo matching.

Every pixel of a rectified pair gets an integer disparity label in
[0, d_max]. Rows are solved independently: the data term is a
window-averaged sum of absolute luminance differences, and a constant
smoothness penalty is charged wherever neighbouring columns change label.
All sampling clamps to the nearest valid pixel, so no label is ever
invalid. Costs stay integer-exact for integer luminance, which lets tiny
instances be checked against exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GrayImage",
    "StereoPair",
    "DisparityMap",
    "StereoParams",
    "to_gray",
    "match_cost",
    "disparity_scanline",
    "compute_disparity",
]


def _validate_raster(data, what: str) -> np.ndarray:
    arr = np.array(data, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{what} needs a nonempty 2-D raster, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{what} contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 255.0:
        raise ValueError(f"{what} values must lie in [0, 255]")
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major luminance raster with values in [0, 255]."""

    data: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "data", _validate_raster(self.data, "GrayImage"))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True, eq=False)
class StereoPair:
    """Rectified left/right pair of identical dimensions."""

    left: GrayImage
    right: GrayImage

    def __post_init__(self) -> None:
        if (self.left.height, self.left.width) != (self.right.height, self.right.width):
            raise ValueError(
                "stereo pair dimensions differ: "
                f"left {self.left.width}x{self.left.height}, "
                f"right {self.right.width}x{self.right.height}"
            )

    @property
    def width(self) -> int:
        return self.left.width

    @property
    def height(self) -> int:
        return self.left.height


@dataclass(frozen=True, eq=False)
class DisparityMap:
    """Integer disparity labels in [0, d_max], same shape as the source pair."""

    data: np.ndarray
    d_max: int

    def __post_init__(self) -> None:
        arr = np.array(self.data)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("DisparityMap needs a nonempty 2-D raster")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("disparities must be integers")
        if self.d_max < 0:
            raise ValueError("d_max must be >= 0")
        if arr.min() < 0 or arr.max() > self.d_max:
            raise ValueError(f"disparities must lie in [0, {self.d_max}]")
        object.__setattr__(self, "data", arr.astype(np.int32))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class StereoParams:
    """Matcher knobs: disparity range, matching window, jump penalty."""

    d_max: int
    window: int = 5
    smoothness: float = 20.0

    def __post_init__(self) -> None:
        if self.d_max < 0:
            raise ValueError("d_max must be >= 0")
        if self.window < 1 or self.window % 2 == 0:
            raise ValueError("window must be odd and >= 1")
        if self.smoothness < 0:
            raise ValueError("smoothness must be >= 0")

    @classmethod
    def for_width(cls, width: int, window: int = 5, smoothness: float = 20.0) -> "StereoParams":
        """Defaults scaled to image width: d_max = width // 8, at least 1."""
        return cls(d_max=max(1, width // 8), window=window, smoothness=smoothness)


def to_gray(rgb_image) -> GrayImage:
    """Convert an RGB raster (height x width x 3) to luminance.

    Uses the 0.299/0.587/0.114 channel weighting, rounded to the nearest
    integer (ties to even).
    """
    arr = np.asarray(rgb_image, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an RGB raster of shape (h, w, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image has a zero dimension")
    if not np.isfinite(arr).all() or arr.min() < 0.0 or arr.max() > 255.0:
        raise ValueError("RGB values must be finite and lie in [0, 255]")
    lum = np.rint(0.299 * arr[..., 0] + 0.587 * arr[..., 1] + 0.114 * arr[..., 2])
    return GrayImage(lum)


def match_cost(pair: StereoPair, x: int, y: int, d: int, window: int) -> float:
    """Window-averaged absolute difference between left (x, y) and right (x - d, y).

    Samples falling outside either raster clamp to the nearest valid
    pixel, so the result is defined for every d in [0, d_max] even near
    the left border. The value lies in [0, 255].
    """
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be odd and >= 1")
    if d < 0:
        raise ValueError("disparity must be >= 0")
    if not (0 <= x < pair.width and 0 <= y < pair.height):
        raise ValueError(f"pixel ({x}, {y}) outside {pair.width}x{pair.height} image")
    half = window // 2
    rows = np.clip(np.arange(y - half, y + half + 1), 0, pair.height - 1)
    cols_l = np.clip(np.arange(x - half, x + half + 1), 0, pair.width - 1)
    cols_r = np.clip(np.arange(x - d - half, x - d + half + 1), 0, pair.width - 1)
    diff = np.abs(pair.left.data[np.ix_(rows, cols_l)] - pair.right.data[np.ix_(rows, cols_r)])
    return float(diff.sum() / (window * window))


def _cost_volume_row(pair: StereoPair, y: int, params: StereoParams) -> np.ndarray:
    """Per-row cost matrix C[d, x], identical to match_cost at every entry."""
    width = pair.width
    half = params.window // 2
    rows = np.clip(np.arange(y - half, y + half + 1), 0, pair.height - 1)
    left_rows = pair.left.data[rows]
    right_rows = pair.right.data[rows]
    cols = np.arange(width)
    cost = np.empty((params.d_max + 1, width), dtype=np.float64)
    for d in range(params.d_max + 1):
        acc = np.zeros(width, dtype=np.float64)
        for dx in range(-half, half + 1):
            lc = np.clip(cols + dx, 0, width - 1)
            rc = np.clip(cols - d + dx, 0, width - 1)
            acc += np.abs(left_rows[:, lc] - right_rows[:, rc]).sum(axis=0)
        cost[d] = acc
    cost /= params.window * params.window
    return cost


def disparity_scanline(pair: StereoPair, y: int, params: StereoParams) -> np.ndarray:
    """Optimal disparity row for scanline y.

    Minimizes sum_x cost(x, d_x) + P * #{x : d_x != d_{x-1}} over all label
    rows by forward DP with backtracking. Ties resolve toward the smaller
    disparity: the final column takes the smallest optimal label and each
    backtracking step takes the smallest optimal predecessor.
    """
    if not 0 <= y < pair.height:
        raise ValueError(f"row {y} outside image of height {pair.height}")
    cost = _cost_volume_row(pair, y, params)
    n_labels, width = cost.shape
    penalty = np.full((n_labels, n_labels), float(params.smoothness))
    np.fill_diagonal(penalty, 0.0)

    dp = cost[:, 0].copy()
    back = np.empty((width, n_labels), dtype=np.int32)
    for x in range(1, width):
        trans = dp[None, :] + penalty  # trans[d, d'] = dp[d'] + P*[d' != d]
        best_prev = np.argmin(trans, axis=1)  # first minimum = smallest d'
        back[x] = best_prev
        dp = cost[:, x] + trans[np.arange(n_labels), best_prev]

    labels = np.empty(width, dtype=np.int32)
    labels[width - 1] = int(np.argmin(dp))
    for x in range(width - 1, 0, -1):
        labels[x - 1] = back[x, labels[x]]
    return labels


def compute_disparity(pair: StereoPair, params: StereoParams) -> DisparityMap:
    """Dense disparity map: disparity_scanline applied to every row."""
    rows = [disparity_scanline(pair, y, params) for y in range(pair.height)]
    return DisparityMap(np.stack(rows), params.d_max)
