"""Real-coded genetic algorithm over layout genomes.

A genome packs 4 genes per image, all in [0, 1]:

    u, v  image center, decoded over [-side/2, 3*side/2] on each axis
    t     rotation, decoded over [-theta_max, theta_max]
    k     layer key (random-key stacking order, larger = on top)

The loop is a plain generational GA: tournament selection, BLX-alpha
blend crossover, per-gene Gaussian mutation, elitism. Everything draws
from one seeded PCG64 generator in a fixed order, so runs are
reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from stereo_collage.fitness import DEFAULT_WEIGHTS, FitnessBreakdown, FitnessWeights, evaluate
from stereo_collage.layout import Canvas, Placement

__all__ = [
    "GaConfig",
    "TraceEntry",
    "FitnessTrace",
    "decode",
    "init_population",
    "tournament_select",
    "blend_crossover",
    "gaussian_mutate",
    "run",
]


@dataclass(frozen=True)
class GaConfig:
    population: int = 40
    generations: int = 150
    tournament_size: int = 2
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    mutation_sigma: float = 0.1
    blx_alpha: float = 0.5
    elite_count: int = 2
    weights: FitnessWeights = DEFAULT_WEIGHTS
    theta_max: float = math.pi / 4
    seed: int = 42

    def __post_init__(self) -> None:
        if self.population < 2:
            raise ValueError("population must be >= 2")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")
        if not 0 <= self.elite_count < self.population:
            raise ValueError("elite_count must lie in [0, population)")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.mutation_sigma < 0 or self.blx_alpha < 0 or self.theta_max < 0:
            raise ValueError("mutation_sigma, blx_alpha and theta_max must be >= 0")


@dataclass(frozen=True)
class TraceEntry:
    """One generation's summary: best/mean totals and the best breakdown."""

    generation: int
    best_total: float
    mean_total: float
    best: FitnessBreakdown


FitnessTrace = list[TraceEntry]


def decode(genome: np.ndarray, canvas: Canvas, theta_max: float) -> list[Placement]:
    """Map a [0,1] genome to placements on the canvas.

    cx = (2u - 0.5) * side and likewise for cy, so centers range over
    [-side/2, 3*side/2]; theta = (2t - 1) * theta_max; layer_key = k.
    """
    genes = np.asarray(genome, dtype=np.float64).reshape(-1, 4)
    side = canvas.side
    return [
        Placement(
            image_id=i,
            cx=(2.0 * u - 0.5) * side,
            cy=(2.0 * v - 0.5) * side,
            theta=(2.0 * t - 1.0) * theta_max,
            layer_key=float(k),
        )
        for i, (u, v, t, k) in enumerate(genes)
    ]


def init_population(config: GaConfig, image_count: int, rng: np.random.Generator) -> np.ndarray:
    """Population matrix of shape (population, 4 * image_count), uniform genes."""
    if image_count < 1:
        raise ValueError("image_count must be >= 1")
    return rng.random((config.population, 4 * image_count))


def tournament_select(
    population: np.ndarray,
    fitnesses: Sequence[float],
    tournament_size: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Sample tournament_size individuals with replacement; return the best.

    Lowest total wins; equal totals go to the earliest population index.
    """
    if len(population) == 0:
        raise ValueError("population is empty")
    picks = rng.integers(0, len(population), size=tournament_size)
    best = min(picks, key=lambda i: (fitnesses[i], i))
    return population[best]


def blend_crossover(
    a: np.ndarray,
    b: np.ndarray,
    blx_alpha: float,
    crossover_rate: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """BLX-alpha crossover, clamped to [0, 1].

    With probability 1 - crossover_rate the parents pass through
    unchanged. Otherwise each child's gene i is uniform on
    [lo - alpha*r, hi + alpha*r] where lo/hi bracket the parents' genes
    and r = hi - lo.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"parent genome lengths differ: {a.shape} vs {b.shape}")
    if rng.random() >= crossover_rate:
        return a.copy(), b.copy()
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    span = hi - lo
    low = lo - blx_alpha * span
    high = hi + blx_alpha * span
    child1 = np.clip(rng.uniform(low, high), 0.0, 1.0)
    child2 = np.clip(rng.uniform(low, high), 0.0, 1.0)
    return child1, child2


def gaussian_mutate(
    genome: np.ndarray,
    mutation_rate: float,
    mutation_sigma: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Per-gene Gaussian perturbation with probability mutation_rate, clamped."""
    genes = np.asarray(genome, dtype=np.float64)
    hit = rng.random(genes.shape) < mutation_rate
    noise = rng.normal(0.0, mutation_sigma, size=genes.shape)
    return np.clip(np.where(hit, genes + noise, genes), 0.0, 1.0)


def run(
    dims: Sequence[tuple[int, int]],
    saliency,
    canvas: Canvas,
    config: GaConfig,
) -> tuple[np.ndarray, FitnessBreakdown, FitnessTrace]:
    """Optimize a layout for the given images.

    dims lists each image's (width, height); saliency the matching maps.
    Returns the best-ever genome, its breakdown, and one TraceEntry per
    generation. Exactly population * generations evaluations are spent.
    """
    if len(dims) < 1:
        raise ValueError("need at least one image")
    if len(dims) != len(saliency):
        raise ValueError("dims and saliency lists must have equal length")
    rng = np.random.default_rng(config.seed)
    population = init_population(config, len(dims), rng)

    trace: FitnessTrace = []
    best_genome: np.ndarray | None = None
    best_breakdown: FitnessBreakdown | None = None
    for generation in range(config.generations):
        breakdowns = [
            evaluate(decode(genome, canvas, config.theta_max), canvas, dims, saliency, config.weights)
            for genome in population
        ]
        totals = np.array([bd.total for bd in breakdowns], dtype=np.float64)
        best_idx = int(np.argmin(totals))
        if best_breakdown is None or totals[best_idx] < best_breakdown.total:
            best_breakdown = breakdowns[best_idx]
            best_genome = population[best_idx].copy()
        trace.append(
            TraceEntry(
                generation=generation,
                best_total=float(totals[best_idx]),
                mean_total=float(totals.mean()),
                best=breakdowns[best_idx],
            )
        )
        if generation == config.generations - 1:
            break

        order = np.argsort(totals, kind="stable")
        children = [population[i].copy() for i in order[: config.elite_count]]
        while len(children) < config.population:
            parent1 = tournament_select(population, totals, config.tournament_size, rng)
            parent2 = tournament_select(population, totals, config.tournament_size, rng)
            child1, child2 = blend_crossover(
                parent1, parent2, config.blx_alpha, config.crossover_rate, rng
            )
            children.append(gaussian_mutate(child1, config.mutation_rate, config.mutation_sigma, rng))
            if len(children) < config.population:
                children.append(
                    gaussian_mutate(child2, config.mutation_rate, config.mutation_sigma, rng)
                )
        population = np.stack(children)

    assert best_genome is not None and best_breakdown is not None
    return best_genome, best_breakdown, trace
