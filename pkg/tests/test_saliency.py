import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stereo_collage.saliency import SaliencyMap, contrast_saliency, depth_to_saliency
from stereo_collage.stereo import DisparityMap, GrayImage

from oracles import median_filter_reference


def disp_map(values, d_max) -> DisparityMap:
    return DisparityMap(np.asarray(values, dtype=np.int64), d_max=d_max)


class TestSaliencyMap:
    def test_total_is_cached_sum(self):
        data = np.linspace(0, 1, 12).reshape(3, 4)
        sal = SaliencyMap(data)
        assert sal.total == pytest.approx(data.sum(), rel=1e-6)

    def test_range_validated(self):
        with pytest.raises(ValueError):
            SaliencyMap(np.array([[1.5]]))
        with pytest.raises(ValueError):
            SaliencyMap(np.array([[-0.1]]))

    def test_as_u8_rounds(self):
        sal = SaliencyMap(np.array([[0.0, 0.5, 1.0]]))
        assert sal.as_u8().tolist() == [[0, 128, 255]]
        assert sal.as_u8().dtype == np.uint8


class TestDepthToSaliency:
    def test_constant_map_becomes_all_ones(self):
        sal = depth_to_saliency(disp_map(np.full((4, 4), 3), d_max=5), median_radius=0)
        assert (sal.data == 1.0).all()
        assert sal.total == 16.0

    def test_two_value_map_hits_endpoints(self):
        values = np.zeros((4, 4), dtype=int)
        values[1, 1] = 7
        sal = depth_to_saliency(disp_map(values, d_max=7), median_radius=0)
        assert set(np.unique(sal.data)) == {0.0, 1.0}
        assert sal.data[1, 1] == 1.0

    def test_spike_removed_by_median(self):
        # column gradient with one spike; radius-1 median restores the
        # gradient, so normalization spreads columns to 0, .25, .5, .75, 1
        values = np.tile(np.arange(5), (5, 1))
        values[2, 2] = 50
        sal = depth_to_saliency(disp_map(values, d_max=50), median_radius=1)
        expected = np.tile([0.0, 0.25, 0.5, 0.75, 1.0], (5, 1))
        assert np.array_equal(sal.data, expected)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10**6), radius=st.integers(0, 2))
    def test_median_matches_reference(self, seed, radius):
        rng = np.random.default_rng(seed)
        values = rng.integers(0, 9, (6, 7))
        sal = depth_to_saliency(disp_map(values, d_max=8), median_radius=radius)
        filtered = median_filter_reference(values.astype(np.float64), radius)
        lo, hi = filtered.min(), filtered.max()
        expected = np.ones_like(filtered) if hi == lo else (filtered - lo) / (hi - lo)
        assert np.array_equal(sal.data, expected)

    def test_monotone_in_disparity_without_filtering(self):
        rng = np.random.default_rng(3)
        base = rng.integers(0, 9, (6, 6))
        base[0, 0], base[5, 5] = 0, 8  # pin shared min and max
        bigger = np.maximum(base, rng.integers(0, 9, (6, 6)))
        bigger[0, 0], bigger[5, 5] = 0, 8
        sal_small = depth_to_saliency(disp_map(base, 8), median_radius=0)
        sal_big = depth_to_saliency(disp_map(bigger, 8), median_radius=0)
        assert (sal_big.data >= sal_small.data).all()


class TestContrastSaliency:
    def test_constant_image_all_ones(self):
        sal = contrast_saliency(GrayImage(np.full((8, 8), 42.0)), block=4)
        assert (sal.data == 1.0).all()

    def test_constant_vs_checkerboard_tiles(self):
        img = np.zeros((4, 8))
        img[:, :4] = 100.0
        img[::2, 4::2] = 255.0
        img[1::2, 5::2] = 255.0
        sal = contrast_saliency(GrayImage(img), block=4)
        assert (sal.data[:, :4] == 0.0).all()
        assert (sal.data[:, 4:] == 1.0).all()

    def test_three_tile_image_matches_std_oracle(self):
        img = np.zeros((4, 12))
        img[:, 0:4] = 100.0
        img[:, 4:8] = [[0, 255, 0, 255], [255, 0, 255, 0], [0, 255, 0, 255], [255, 0, 255, 0]]
        img[:, 8:12] = [[10, 20, 30, 40]] * 4
        sal = contrast_saliency(GrayImage(img), block=4)
        # tile stds 0, 127.5, 11.180339887498949 -> min-max normalized
        assert (sal.data[:, 0:4] == 0.0).all()
        assert (sal.data[:, 4:8] == 1.0).all()
        assert sal.data[0, 8] == pytest.approx(0.08768894029410941, abs=1e-15)

    def test_ragged_edge_tiles_allowed(self):
        rng = np.random.default_rng(4)
        img = GrayImage(rng.integers(0, 256, (10, 13)).astype(np.float64))
        sal = contrast_saliency(img, block=4)
        assert sal.data.shape == (10, 13)

    def test_block_too_small_rejected(self):
        with pytest.raises(ValueError):
            contrast_saliency(GrayImage(np.zeros((4, 4))), block=1)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_normalization_touches_both_endpoints(seed):
    rng = np.random.default_rng(seed)
    values = rng.integers(0, 10, (5, 5))
    sal = depth_to_saliency(disp_map(values, 9), median_radius=0)
    assert sal.data.min() >= 0.0 and sal.data.max() <= 1.0
    assert (sal.data == 1.0).any()
    if values.min() < values.max():
        assert (sal.data == 0.0).any()
    assert sal.total == pytest.approx(sal.data.sum(), rel=1e-6)
