import sys
from pathlib import Path

import numpy as np
import pytest

from stereo_collage.layout import canvas_for
from stereo_collage.saliency import SaliencyMap

sys.path.insert(0, str(Path(__file__).parent))


def gaussian_blob_saliency(width, height, cx, cy, sigma):
    """Saliency map with one normalized Gaussian bump."""
    yy, xx = np.mgrid[0:height, 0:width]
    g = np.exp(-(((xx - cx) ** 2 + (yy - cy) ** 2) / (2.0 * sigma**2)))
    g = (g - g.min()) / (g.max() - g.min())
    return SaliencyMap(g)


DESK_BLOBS = [(20, 20, 9), (44, 18, 12), (32, 40, 8), (14, 48, 10), (50, 46, 7)]


@pytest.fixture(scope="session")
def desk_instance():
    """Five 64x64 images with Gaussian-blob saliency, canvas at half area."""
    dims = [(64, 64)] * 5
    saliency = [gaussian_blob_saliency(64, 64, cx, cy, s) for cx, cy, s in DESK_BLOBS]
    canvas = canvas_for(dims, 0.5)
    return dims, saliency, canvas
