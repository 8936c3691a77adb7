"""Picture collages from stereo pairs.

Disparity from scanline dynamic programming becomes per-image saliency;
a real-coded genetic algorithm then places, rotates and layers the
images on a square canvas so visible saliency is maximized, blank canvas
is minimized and no image is reduced to a sliver.
"""

from stereo_collage.fitness import DEFAULT_WEIGHTS, FitnessBreakdown, FitnessWeights, evaluate
from stereo_collage.ga import GaConfig, TraceEntry, decode
from stereo_collage.layout import BLANK, Canvas, Placement, VisibilityRaster, canvas_for, rasterize, visible_mass
from stereo_collage.pipeline import JobConfig, MonoInput, StereoInput, discover_inputs, run_job, run_saliency_job
from stereo_collage.render import PALETTE, render_collage, render_usage
from stereo_collage.saliency import SaliencyMap, contrast_saliency, depth_to_saliency
from stereo_collage.stereo import (
    DisparityMap,
    GrayImage,
    StereoPair,
    StereoParams,
    compute_disparity,
    disparity_scanline,
    match_cost,
    to_gray,
)

__version__ = "0.1.0"

__all__ = [
    "BLANK",
    "Canvas",
    "DEFAULT_WEIGHTS",
    "DisparityMap",
    "FitnessBreakdown",
    "FitnessWeights",
    "GaConfig",
    "GrayImage",
    "JobConfig",
    "MonoInput",
    "PALETTE",
    "Placement",
    "SaliencyMap",
    "StereoInput",
    "StereoPair",
    "StereoParams",
    "TraceEntry",
    "VisibilityRaster",
    "canvas_for",
    "compute_disparity",
    "contrast_saliency",
    "decode",
    "depth_to_saliency",
    "discover_inputs",
    "disparity_scanline",
    "evaluate",
    "match_cost",
    "rasterize",
    "render_collage",
    "render_usage",
    "run_job",
    "run_saliency_job",
    "to_gray",
    "visible_mass",
]
