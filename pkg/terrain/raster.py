"""
Whole-raster derived layers: 3x3 slope and curvature, 5x5 focal mean and
residual topography.

The 3x3 window is laid out row-major with row 0 to the north::

    z1 z2 z3
    z4 z5 z6
    z7 z8 z9

Neighbors outside the raster or on NoData take the center value. The
kernel helpers below accept plain floats as well as whole arrays, so the
per-cell and full-map operations share one arithmetic expression.
"""
from typing import NamedTuple

import numpy as np

from .exceptions import ParameterError

# (row, col) offsets of z1..z9
WINDOW_OFFSETS = tuple((di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1))


class Window3(NamedTuple):
    z1: float
    z2: float
    z3: float
    z4: float
    z5: float
    z6: float
    z7: float
    z8: float
    z9: float


def gather_window(dem, i, j):
    """
    3x3 window centered on cell (i, j). Returns None when the center is
    NoData; callers skip such cells.
    """
    if not dem.mask[i, j]:
        return None
    nrows, ncols = dem.shape
    center = float(dem.values[i, j])
    values = []
    for di, dj in WINDOW_OFFSETS:
        r, c = i + di, j + dj
        if 0 <= r < nrows and 0 <= c < ncols and dem.mask[r, c]:
            values.append(float(dem.values[r, c]))
        else:
            values.append(center)
    return Window3(*values)


def _check_cell(L):
    if not L > 0:
        raise ParameterError('cell size L must be positive (got %r)' % (L,))


def gradients(w, L):
    """dz/dx and dz/dy of the center cell from weighted differences across the window."""
    dzdx = ((w.z3 + 2 * w.z6 + w.z9) - (w.z1 + 2 * w.z4 + w.z7)) / (8 * L)
    dzdy = ((w.z7 + 2 * w.z8 + w.z9) - (w.z1 + 2 * w.z2 + w.z3)) / (8 * L)
    return dzdx, dzdy


def _slope(w, L):
    dzdx, dzdy = gradients(w, L)
    return np.arctan(np.sqrt(dzdx * dzdx + dzdy * dzdy))


def _curvature(w, L):
    d = ((w.z4 + w.z6) / 2 - w.z5) / L ** 2
    e = ((w.z2 + w.z8) / 2 - w.z5) / L ** 2
    return 2 * e + 2 * d


def slope_cell(w, L):
    """Slope of the center cell in radians, in [0, pi/2)."""
    _check_cell(L)
    return float(_slope(w, L))


def curvature_cell(w, L):
    """Zevenbergen-Thorne curvature 2E + 2D, in 1/m."""
    _check_cell(L)
    return float(_curvature(w, L))


def _window_layers(dem):
    """The nine window positions as whole arrays, edge rule applied."""
    center = dem.values
    padded = np.pad(center, 1, constant_values=np.nan)
    nrows, ncols = dem.shape
    layers = []
    for di, dj in WINDOW_OFFSETS:
        shifted = padded[1 + di:1 + di + nrows, 1 + dj:1 + dj + ncols]
        layers.append(np.where(np.isnan(shifted), center, shifted))
    return Window3(*layers)


def slope_map(dem):
    """Slope in radians at every valid cell; same grid as ``dem``."""
    values = _slope(_window_layers(dem), dem.spec.cell)
    return dem.with_values(np.where(dem.mask, values, np.nan))


def curvature_map(dem):
    values = _curvature(_window_layers(dem), dem.spec.cell)
    return dem.with_values(np.where(dem.mask, values, np.nan))


def focal_mean5(dem):
    """
    Mean of the valid cells of every 5x5 neighborhood, center included,
    truncated at the raster edges.

    Neighbors are accumulated as offsets from the center so that a
    constant neighborhood returns the center value exactly.
    """
    center = np.where(dem.mask, dem.values, 0.0)
    nrows, ncols = dem.shape
    values = np.pad(center, 2)
    valid = np.pad(dem.mask, 2)
    total = np.zeros(dem.shape)
    count = np.zeros(dem.shape)
    for di in range(-2, 3):
        for dj in range(-2, 3):
            window = (slice(2 + di, 2 + di + nrows), slice(2 + dj, 2 + dj + ncols))
            ok = valid[window]
            total += np.where(ok, values[window] - center, 0.0)
            count += ok
    with np.errstate(invalid='ignore', divide='ignore'):
        smoothed = center + total / count
    return dem.with_values(np.where(dem.mask, smoothed, np.nan))


def residual_topography(dem):
    """``dem`` minus its 5x5 focal mean, cellwise."""
    smoothed = focal_mean5(dem)
    return dem.with_values(np.where(dem.mask, dem.values - smoothed.values, np.nan))
