"""End-to-end job: discover inputs, build saliency, optimize, write artifacts.

Input discovery pairs `<name>_left.<ext>` with `<name>_right.<ext>` into
stereo inputs; every other image file is treated as mono. Stereo inputs
get depth-based saliency from the left/right pair (the left image is the
one placed on the canvas); mono inputs use the contrast fallback.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from stereo_collage.fitness import FitnessBreakdown
from stereo_collage.ga import FitnessTrace, GaConfig, decode, run
from stereo_collage.layout import Canvas, Placement, canvas_for, rasterize
from stereo_collage.render import render_collage, render_usage
from stereo_collage.saliency import SaliencyMap, contrast_saliency, depth_to_saliency
from stereo_collage.stereo import DisparityMap, StereoPair, StereoParams, compute_disparity, to_gray

__all__ = [
    "IMAGE_EXTS",
    "StereoInput",
    "MonoInput",
    "JobConfig",
    "PipelineError",
    "discover_inputs",
    "run_job",
    "run_saliency_job",
]

log = logging.getLogger(__name__)

IMAGE_EXTS = {".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff", ".webp"}


@dataclass(frozen=True)
class StereoInput:
    name: str
    left: Path
    right: Path


@dataclass(frozen=True)
class MonoInput:
    name: str
    path: Path


InputItem = Union[StereoInput, MonoInput]


@dataclass
class JobConfig:
    """Everything a collage job needs; mirrors the CLI/config-file keys."""

    input_dir: Path
    output_dir: Path
    area_ratio: float = 0.5
    d_max: int | None = None  # None: width // 8, at least 1
    window: int = 5
    smoothness: float = 20.0
    median_radius: int = 1
    contrast_block: int = 16
    background: tuple[int, int, int] = (128, 128, 128)
    ga: GaConfig = field(default_factory=GaConfig)

    def __post_init__(self) -> None:
        self.input_dir = Path(self.input_dir)
        self.output_dir = Path(self.output_dir)
        if str(self.input_dir) == "" or str(self.output_dir) == "":
            raise ValueError("input and output paths must be nonempty")
        if self.area_ratio <= 0:
            raise ValueError("area_ratio must be > 0")


class PipelineError(RuntimeError):
    """Stage-tagged pipeline failure."""

    def __init__(self, stage: str, message: str):
        super().__init__(message)
        self.stage = stage


def _probe_size(path: Path) -> tuple[int, int] | None:
    try:
        with Image.open(path) as img:
            return img.size
    except (UnidentifiedImageError, OSError) as exc:
        log.warning("cannot read %s: %s", path.name, exc)
        return None


def discover_inputs(input_dir: Path) -> list[InputItem]:
    """Scan a directory into stereo pairs and mono images, sorted by name.

    A `_left` file without its `_right` partner (or vice versa) is
    demoted to mono with a warning. Pairs whose halves disagree on
    dimensions are rejected outright, with a diagnostic per file.
    """
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise FileNotFoundError(f"input directory not found: {input_dir}")
    by_stem: dict[str, Path] = {}
    for path in sorted(input_dir.iterdir()):
        if not path.is_file() or path.suffix.lower() not in IMAGE_EXTS:
            continue
        if path.stem in by_stem:
            log.warning("duplicate image stem %s, keeping %s", path.stem, by_stem[path.stem].name)
            continue
        by_stem[path.stem] = path

    items: list[InputItem] = []
    used: set[str] = set()
    for stem in sorted(by_stem):
        if stem in used:
            continue
        path = by_stem[stem]
        if stem.endswith("_left"):
            base = stem[: -len("_left")]
            partner = by_stem.get(base + "_right")
            if partner is None:
                log.warning("%s has no matching _right file, treating as mono", path.name)
                items.append(MonoInput(stem, path))
                continue
            used.add(base + "_right")
            left_size = _probe_size(path)
            right_size = _probe_size(partner)
            if left_size is None or right_size is None:
                continue
            if left_size != right_size:
                log.warning("rejecting pair %s: %s is %dx%d", base, path.name, *left_size)
                log.warning("rejecting pair %s: %s is %dx%d", base, partner.name, *right_size)
                continue
            items.append(StereoInput(base, path, partner))
        elif stem.endswith("_right"):
            base = stem[: -len("_right")]
            if base + "_left" in by_stem:
                # consumed (or rejected) by the _left branch above
                used.add(stem)
                continue
            log.warning("%s has no matching _left file, treating as mono", path.name)
            items.append(MonoInput(stem, path))
        else:
            items.append(MonoInput(stem, path))
    items.sort(key=lambda item: item.name)
    return items


def _load_rgb(path: Path) -> np.ndarray:
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def _stereo_params(width: int, config: JobConfig) -> StereoParams:
    if config.d_max is not None:
        return StereoParams(d_max=config.d_max, window=config.window, smoothness=config.smoothness)
    return StereoParams.for_width(width, window=config.window, smoothness=config.smoothness)


def _depth_u8(disp: DisparityMap) -> np.ndarray:
    if disp.d_max == 0:
        return np.zeros(disp.data.shape, dtype=np.uint8)
    return np.rint(disp.data * (255.0 / disp.d_max)).astype(np.uint8)


def _save_png(array: np.ndarray, path: Path, written: list[Path]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(array).save(path)
    written.append(path)


def _prepare_item(
    item: InputItem, config: JobConfig
) -> tuple[np.ndarray, SaliencyMap, DisparityMap | None]:
    """Load one input: (color image, saliency map, disparity if stereo)."""
    if isinstance(item, StereoInput):
        color = _load_rgb(item.left)
        pair = StereoPair(to_gray(color), to_gray(_load_rgb(item.right)))
        disp = compute_disparity(pair, _stereo_params(pair.width, config))
        return color, depth_to_saliency(disp, config.median_radius), disp
    color = _load_rgb(item.path)
    sal = contrast_saliency(to_gray(color), config.contrast_block)
    return color, sal, None


def _source_file(item: InputItem) -> str:
    return item.left.name if isinstance(item, StereoInput) else item.path.name


def _write_trace_csv(path: Path, trace: FitnessTrace, written: list[Path]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write("generation,best_total,mean_total,a_occ,b,v\n")
        for entry in trace:
            fh.write(
                f"{entry.generation},{entry.best_total:.6f},{entry.mean_total:.6f},"
                f"{entry.best.a_occ:.6f},{entry.best.b:.6f},{entry.best.v:.6f}\n"
            )
    written.append(path)


def _write_layout_json(
    path: Path,
    canvas: Canvas,
    placements: Sequence[Placement],
    items: Sequence[InputItem],
    written: list[Path],
) -> None:
    doc = {
        "canvas_side": canvas.side,
        "placements": [
            {
                "file": _source_file(item),
                "cx": placement.cx,
                "cy": placement.cy,
                "theta_degrees": math.degrees(placement.theta),
                "layer_key": placement.layer_key,
            }
            for placement, item in zip(placements, items)
        ],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    written.append(path)


def run_job(config: JobConfig) -> int:
    """Full pipeline; returns a process exit status.

    Writes collage.png, usage.png, trace.csv, layout.json and one
    saliency_<name>.png per input into the output directory. On failure
    the files written so far are removed and the status is nonzero.
    """
    written: list[Path] = []
    stage = "setup"
    try:
        stage = "discover"
        items = discover_inputs(config.input_dir)
        if not items:
            raise PipelineError(stage, f"no inputs in {config.input_dir}")

        stage = "saliency"
        colors: list[np.ndarray] = []
        saliency: list[SaliencyMap] = []
        for item in items:
            color, sal, _ = _prepare_item(item, config)
            colors.append(color)
            saliency.append(sal)
        dims = [(img.shape[1], img.shape[0]) for img in colors]

        stage = "canvas"
        canvas = canvas_for(dims, config.area_ratio)

        stage = "optimize"
        best_genome, _, trace = run(dims, saliency, canvas, config.ga)
        placements = decode(best_genome, canvas, config.ga.theta_max)

        stage = "write"
        out = config.output_dir
        for item, sal in zip(items, saliency):
            _save_png(sal.as_u8(), out / f"saliency_{item.name}.png", written)
        _save_png(render_collage(placements, canvas, colors, config.background), out / "collage.png", written)
        raster = rasterize(placements, canvas, dims)
        _save_png(render_usage(raster, saliency), out / "usage.png", written)
        _write_trace_csv(out / "trace.csv", trace, written)
        _write_layout_json(out / "layout.json", canvas, placements, items, written)
        return 0
    except Exception as exc:
        for path in written:
            path.unlink(missing_ok=True)
        log.error("[%s] %s", stage, exc)
        return 1


def run_saliency_job(config: JobConfig) -> int:
    """Diagnostic mode: write only depth and saliency maps, no collage."""
    written: list[Path] = []
    stage = "setup"
    try:
        stage = "discover"
        items = discover_inputs(config.input_dir)
        if not items:
            raise PipelineError(stage, f"no inputs in {config.input_dir}")
        stage = "saliency"
        out = config.output_dir
        for item in items:
            _, sal, disp = _prepare_item(item, config)
            if disp is not None:
                _save_png(_depth_u8(disp), out / f"depth_{item.name}.png", written)
            _save_png(sal.as_u8(), out / f"saliency_{item.name}.png", written)
        return 0
    except Exception as exc:
        for path in written:
            path.unlink(missing_ok=True)
        log.error("[%s] %s", stage, exc)
        return 1
