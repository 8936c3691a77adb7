"""Command-line entry point.

    collage run --input DIR --output DIR [--seed N] [--generations N]
                [--population N] [--area-ratio R]
                [--lambda-a R --lambda-b R --lambda-v R]
                [--theta-max-degrees D] [--config FILE]
    collage saliency --input DIR --output DIR [--config FILE]

A JSON config file can hold any JobConfig key (see README); explicit
flags always win over the file, which wins over built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from stereo_collage.fitness import FitnessWeights
from stereo_collage.ga import GaConfig
from stereo_collage.pipeline import JobConfig, run_job, run_saliency_job


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collage", description="Saliency-driven picture collages from stereo pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="build a collage from a directory of images")
    saliency_p = sub.add_parser("saliency", help="emit only depth/saliency diagnostic maps")

    for p in (run_p, saliency_p):
        p.add_argument("--input", type=Path, help="input directory of images / stereo pairs")
        p.add_argument("--output", type=Path, help="output directory for artifacts")
        p.add_argument("--config", type=Path, help="JSON config file (flags override it)")

    run_p.add_argument("--seed", type=int, help="RNG seed (default 42)")
    run_p.add_argument("--generations", type=int, help="GA generations (default 150)")
    run_p.add_argument("--population", type=int, help="GA population size (default 40)")
    run_p.add_argument("--area-ratio", type=float, help="canvas area / total image area (default 0.5)")
    run_p.add_argument("--lambda-a", type=float, help="hidden-saliency weight")
    run_p.add_argument("--lambda-b", type=float, help="blank-canvas weight")
    run_p.add_argument("--lambda-v", type=float, help="worst-image balance weight")
    run_p.add_argument("--theta-max-degrees", type=float, help="rotation limit (default 45)")
    return parser


def _load_config_file(path: Path | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    return doc


def _pick(flag, file_cfg: dict, key: str, default):
    if flag is not None:
        return flag
    return file_cfg.get(key, default)


def _weights_from(args: argparse.Namespace, ga_cfg: dict) -> FitnessWeights | None:
    flags = (args.lambda_a, args.lambda_b, args.lambda_v)
    given = [w for w in flags if w is not None]
    if given and len(given) != 3:
        raise ValueError("--lambda-a, --lambda-b and --lambda-v must be given together")
    if len(given) == 3:
        return FitnessWeights(*flags)
    file_lambdas = tuple(ga_cfg.get(k) for k in ("lambda_a", "lambda_b", "lambda_v"))
    if all(w is not None for w in file_lambdas):
        return FitnessWeights(*file_lambdas)
    if any(w is not None for w in file_lambdas):
        raise ValueError("config file must set all of lambda_a, lambda_b, lambda_v or none")
    return None


def _job_config(args: argparse.Namespace) -> JobConfig:
    file_cfg = _load_config_file(args.config)
    input_dir = _pick(args.input, file_cfg, "input_dir", None)
    output_dir = _pick(args.output, file_cfg, "output_dir", None)
    if input_dir is None:
        raise ValueError("an input directory is required (--input or config input_dir)")
    if output_dir is None:
        raise ValueError("an output directory is required (--output or config output_dir)")

    ga_cfg = file_cfg.get("ga", {})
    defaults = GaConfig()
    if args.command == "run":
        weights = _weights_from(args, ga_cfg) or defaults.weights
        theta_degrees = _pick(args.theta_max_degrees, file_cfg, "theta_max_degrees", math.degrees(defaults.theta_max))
        ga = GaConfig(
            population=_pick(args.population, ga_cfg, "population", defaults.population),
            generations=_pick(args.generations, ga_cfg, "generations", defaults.generations),
            tournament_size=ga_cfg.get("tournament_size", defaults.tournament_size),
            crossover_rate=ga_cfg.get("crossover_rate", defaults.crossover_rate),
            mutation_rate=ga_cfg.get("mutation_rate", defaults.mutation_rate),
            mutation_sigma=ga_cfg.get("mutation_sigma", defaults.mutation_sigma),
            blx_alpha=ga_cfg.get("blx_alpha", defaults.blx_alpha),
            elite_count=ga_cfg.get("elite_count", defaults.elite_count),
            weights=weights,
            theta_max=math.radians(theta_degrees),
            seed=_pick(args.seed, ga_cfg, "seed", defaults.seed),
        )
        area_ratio = _pick(args.area_ratio, file_cfg, "area_ratio", 0.5)
    else:
        ga = defaults
        area_ratio = file_cfg.get("area_ratio", 0.5)

    background = file_cfg.get("background", (128, 128, 128))
    return JobConfig(
        input_dir=Path(input_dir),
        output_dir=Path(output_dir),
        area_ratio=area_ratio,
        d_max=file_cfg.get("d_max"),
        window=file_cfg.get("window", 5),
        smoothness=file_cfg.get("smoothness", 20.0),
        median_radius=file_cfg.get("median_radius", 1),
        contrast_block=file_cfg.get("contrast_block", 16),
        background=tuple(background),
        ga=ga,
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = _job_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "run":
        return run_job(config)
    return run_saliency_job(config)


if __name__ == "__main__":
    raise SystemExit(main())
