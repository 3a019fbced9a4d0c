"""
Deterministic synthetic terrain for desk-scale checks: sums of random
sinusoids on top of an optional tilted plane.
"""
import math

import numpy as np

from .gridding import Dem, GridSpec
from .pointcloud import PointCloud


class SinusoidField:
    """
    z(x, y) = b0 + b1*x + b2*y + sum_k a_k * sin(2*pi*(x*cos t_k + y*sin t_k)/l_k + p_k)
    """

    def __init__(self, n_terms=8, seed=0, amplitude=(0.05, 1.0), wavelength=(2.0, 40.0),
                 plane=(0.0, 0.0, 0.0)):
        rng = np.random.default_rng(seed)
        self.amplitudes = rng.uniform(*amplitude, size=n_terms)
        self.wavelengths = rng.uniform(*wavelength, size=n_terms)
        self.directions = rng.uniform(0.0, math.pi, size=n_terms)
        self.phases = rng.uniform(0.0, 2 * math.pi, size=n_terms)
        self.plane = plane

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        b0, b1, b2 = self.plane
        z = b0 + b1 * x + b2 * y
        for a, l, t, p in zip(self.amplitudes, self.wavelengths, self.directions, self.phases):
            z = z + a * np.sin(2 * math.pi * (x * math.cos(t) + y * math.sin(t)) / l + p)
        return z


def sinusoid_surface(nrows, ncols, cell=1.0, n_terms=8, seed=0, x0=0.0, y0=0.0, **field_options):
    """Fully valid Dem sampled from a SinusoidField at the cell centers."""
    spec = GridSpec(x0, y0, ncols, nrows, cell)
    X, Y = spec.cell_centers()
    field = SinusoidField(n_terms=n_terms, seed=seed, **field_options)
    return Dem(spec, field(X, Y))


def sample_cloud(field, n_points, bounds, seed=0, include_corners=True):
    """
    ``n_points`` uniform random (x, y) samples in ``bounds`` with
    z = field(x, y). With ``include_corners`` the four bound corners are
    part of the sample, so the convex hull spans the whole box.
    """
    xmin, ymin, xmax, ymax = bounds
    rng = np.random.default_rng(seed)
    x = rng.uniform(xmin, xmax, size=n_points)
    y = rng.uniform(ymin, ymax, size=n_points)
    if include_corners:
        x = np.concatenate([[xmin, xmax, xmin, xmax], x])[:max(n_points, 4)]
        y = np.concatenate([[ymin, ymin, ymax, ymax], y])[:max(n_points, 4)]
    return PointCloud(np.column_stack([x, y, field(x, y)]))
