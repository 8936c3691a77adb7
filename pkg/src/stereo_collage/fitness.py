"""Layout quality as a weighted three-term energy, lower is better.

a_occ: fraction of global saliency that is hidden (occluded or cropped).
b:     fraction of the canvas left blank.
v:     hidden-saliency fraction of the worst-covered image, so no image
       is reduced to a sliver.
All three live in [0, 1]; the total is their convex combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from stereo_collage.layout import BLANK, Canvas, Placement, rasterize, visible_mass
from stereo_collage.saliency import SaliencyMap

__all__ = ["FitnessWeights", "FitnessBreakdown", "DEFAULT_WEIGHTS", "evaluate"]


@dataclass(frozen=True)
class FitnessWeights:
    """Convex weights for the three energy terms; must sum to 1."""

    lambda_a: float
    lambda_b: float
    lambda_v: float

    def __post_init__(self) -> None:
        if self.lambda_a < 0 or self.lambda_b < 0 or self.lambda_v < 0:
            raise ValueError("fitness weights must be >= 0")
        total = self.lambda_a + self.lambda_b + self.lambda_v
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"fitness weights must sum to 1, got {total!r}")


DEFAULT_WEIGHTS = FitnessWeights(10 / 30, 9 / 30, 11 / 30)


@dataclass(frozen=True)
class FitnessBreakdown:
    a_occ: float
    b: float
    v: float
    total: float


def evaluate(
    placements: Sequence[Placement],
    canvas: Canvas,
    dims: Sequence[tuple[int, int]],
    saliency: Sequence[SaliencyMap],
    weights: FitnessWeights = DEFAULT_WEIGHTS,
) -> FitnessBreakdown:
    """Score a layout; every saliency map must have positive total.

    Visible-mass ratios are clamped to 1: nearest-neighbour sampling can
    hit the same source pixel from two canvas pixels under rotation, and
    the clamp keeps every component inside [0, 1].
    """
    if not saliency:
        raise ValueError("need at least one saliency map")
    totals = np.array([s.total for s in saliency], dtype=np.float64)
    if (totals <= 0.0).any():
        raise ValueError("every saliency map must have total > 0")
    raster = rasterize(placements, canvas, dims)
    visible = visible_mass(raster, saliency)
    ratios = np.minimum(visible / totals, 1.0)
    a_occ = 1.0 - min(1.0, float(visible.sum() / totals.sum()))
    blank = int(np.count_nonzero(raster.owner == BLANK))
    b = blank / float(canvas.side * canvas.side)
    v = 1.0 - float(ratios.min())
    total = weights.lambda_a * a_occ + weights.lambda_b * b + weights.lambda_v * v
    return FitnessBreakdown(a_occ=a_occ, b=b, v=v, total=total)
