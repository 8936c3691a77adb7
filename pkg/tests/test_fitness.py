import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stereo_collage.fitness import DEFAULT_WEIGHTS, FitnessWeights, evaluate
from stereo_collage.layout import Canvas, Placement
from stereo_collage.saliency import SaliencyMap

from oracles import fitness_reference
from test_layout import random_layout, uniform_saliency


class TestWeights:
    def test_defaults_sum_to_one(self):
        total = DEFAULT_WEIGHTS.lambda_a + DEFAULT_WEIGHTS.lambda_b + DEFAULT_WEIGHTS.lambda_v
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_bad_sum_rejected(self):
        with pytest.raises(ValueError):
            FitnessWeights(0.5, 0.5, 0.5)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            FitnessWeights(-0.2, 0.6, 0.6)


class TestAnchors:
    def test_perfect_cover_is_zero(self):
        side = 8
        bd = evaluate(
            [Placement(0, 4.0, 4.0, 0.0, 0.5)],
            Canvas(side),
            [(side, side)],
            [uniform_saliency(side, side)],
        )
        assert (bd.a_occ, bd.b, bd.v, bd.total) == (0.0, 0.0, 0.0, 0.0)

    def test_everything_off_canvas_is_one(self):
        side = 8
        placements = [Placement(i, 500.0, 500.0, 0.0, 0.5) for i in range(2)]
        bd = evaluate(placements, Canvas(side), [(side, side)] * 2, [uniform_saliency(side, side)] * 2)
        assert (bd.a_occ, bd.b, bd.v, bd.total) == (1.0, 1.0, 1.0, 1.0)

    def test_weighted_total_arithmetic(self):
        # (10*0.3 + 9*0.2 + 11*0.4) / 30
        w = DEFAULT_WEIGHTS
        total = w.lambda_a * 0.3 + w.lambda_b * 0.2 + w.lambda_v * 0.4
        assert total == pytest.approx(0.30666666666666664, abs=1e-9)

    def test_full_occlusion_pair(self):
        side = 8
        placements = [
            Placement(0, 4.0, 4.0, 0.0, 0.9),
            Placement(1, 4.0, 4.0, 0.0, 0.1),
        ]
        bd = evaluate(placements, Canvas(side), [(side, side)] * 2, [uniform_saliency(side, side)] * 2)
        assert (bd.a_occ, bd.b, bd.v) == (0.5, 0.0, 1.0)

    def test_zero_total_saliency_rejected(self):
        with pytest.raises(ValueError):
            evaluate(
                [Placement(0, 4.0, 4.0, 0.0, 0.5)],
                Canvas(8),
                [(8, 8)],
                [SaliencyMap(np.zeros((8, 8)))],
            )

    def test_no_saliency_rejected(self):
        with pytest.raises(ValueError):
            evaluate([], Canvas(8), [], [])


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), n_images=st.integers(1, 3))
def test_components_bounded_and_match_reference(seed, n_images):
    rng = np.random.default_rng(seed)
    side = int(rng.integers(4, 20))
    placements, dims = random_layout(rng, n_images, side)
    saliency = []
    for w, h in dims:
        data = rng.random((h, w))
        data.flat[0] = 0.0
        data.flat[-1] = 1.0
        saliency.append(SaliencyMap(data))
    bd = evaluate(placements, Canvas(side), dims, saliency)
    for value in (bd.a_occ, bd.b, bd.v, bd.total):
        assert 0.0 <= value <= 1.0
    ref_a, ref_b, ref_v, ref_total = fitness_reference(placements, Canvas(side), dims, saliency, DEFAULT_WEIGHTS)
    assert bd.a_occ == ref_a
    assert bd.b == ref_b
    assert bd.v == ref_v
    assert bd.total == ref_total


def test_total_is_exact_affine_combination():
    rng = np.random.default_rng(9)
    side = 12
    placements, dims = random_layout(rng, 2, side)
    saliency = [uniform_saliency(w, h) for w, h in dims]
    weights = FitnessWeights(0.2, 0.5, 0.3)
    bd = evaluate(placements, Canvas(side), dims, saliency, weights)
    assert bd.total == pytest.approx(0.2 * bd.a_occ + 0.5 * bd.b + 0.3 * bd.v, abs=1e-9)


def test_scaling_weights_preserves_ranking():
    # weights are normalized by construction, so the scale-invariance of
    # the argmin is checked on the raw components
    rng = np.random.default_rng(10)
    side = 12
    breakdowns = []
    for _ in range(6):
        placements, dims = random_layout(rng, 2, side)
        saliency = [uniform_saliency(w, h) for w, h in dims]
        breakdowns.append(evaluate(placements, Canvas(side), dims, saliency))
    for scale in (0.5, 3.0):
        raw = [DEFAULT_WEIGHTS.lambda_a * bd.a_occ + DEFAULT_WEIGHTS.lambda_b * bd.b + DEFAULT_WEIGHTS.lambda_v * bd.v for bd in breakdowns]
        scaled = [scale * r for r in raw]
        assert int(np.argmin(raw)) == int(np.argmin(scaled))
        for r, s in zip(raw, scaled):
            assert s == pytest.approx(scale * r, rel=1e-12)


def test_moving_image_off_canvas_never_helps():
    # non-overlapping layout: pushing one image off can only hide mass
    side = 16
    dims = [(6, 6), (6, 6)]
    saliency = [uniform_saliency(6, 6), uniform_saliency(6, 6)]
    placements = [
        Placement(0, 4.0, 4.0, 0.0, 0.9),
        Placement(1, 12.0, 12.0, 0.0, 0.1),
    ]
    before = evaluate(placements, Canvas(side), dims, saliency)
    moved = [placements[0], Placement(1, 500.0, 500.0, 0.0, 0.1)]
    after = evaluate(moved, Canvas(side), dims, saliency)
    assert after.v >= before.v
    assert after.a_occ >= before.a_occ


def test_v_maxes_out_whenever_any_image_vanishes():
    rng = np.random.default_rng(12)
    side = 16
    placements, dims = random_layout(rng, 3, side)
    moved = [Placement(2, 900.0, 900.0, 0.0, 0.0) if p.image_id == 2 else p for p in placements]
    saliency = [uniform_saliency(w, h) for w, h in dims]
    assert evaluate(moved, Canvas(side), dims, saliency).v == 1.0
