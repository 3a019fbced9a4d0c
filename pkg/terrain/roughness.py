"""
The five local roughness indices, evaluated over non-overlapping w x w
windows anchored at the northwest corner of a DEM.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from .exceptions import (EmptyMapError, InsufficientDataError,
                         InsufficientExtentError)
from .gridding import Dem
from .pointcloud import PointCloud, detrend, fit_plane
from .raster import curvature_map, residual_topography, slope_map
from .validators import check_window_scale

logger = logging.getLogger(__name__)

DEFAULT_SCALES = (3, 5, 7, 9, 11)


class RoughnessIndex(models.TextChoices):
    """
    Roughness indices, in the order rows and columns of comparison
    matrices are laid out.
    """
    RMSH = 'RMSH', _('Root mean square height')
    LDRE = 'LDRE', _('Std. of locally detrended residual elevation')
    RT = 'RT', _('Std. of residual topography')
    SLOPE = 'SLOPE', _('Std. of slope')
    CURVATURE = 'CURVATURE', _('Std. of curvature')

    @classmethod
    def ordered(cls):
        return tuple(cls)


class RoughnessMap(Dem):
    """Coarse raster of one index at one window scale; cell size is w * L."""

    def __init__(self, index, scale, spec, values, mask=None):
        super().__init__(spec, values, mask)
        self.index = RoughnessIndex(index)
        self.scale = scale

    def with_values(self, values, mask=None):
        return RoughnessMap(self.index, self.scale, self.spec, values,
                            self.mask if mask is None else mask)

    def __repr__(self):
        return '<RoughnessMap %s w=%d: %dx%d>' % (self.index.value, self.scale,
                                                  self.spec.nrows, self.spec.ncols)


def _sample_std(values):
    """
    n-1 standard deviation over the last axis. Values are shifted by their
    first element first, which leaves the result unchanged and makes a
    constant sample give exactly 0.
    """
    n = values.shape[-1]
    shifted = values - values[..., :1]
    dev = shifted - shifted.mean(axis=-1, keepdims=True)
    return np.sqrt((dev * dev).sum(axis=-1) / (n - 1))


def window_std(values):
    """Sample standard deviation (n - 1 denominator)."""
    values = np.asarray(values, dtype=float).ravel()
    if values.size < 2:
        raise InsufficientDataError('standard deviation needs at least 2 values (got %d)' % values.size)
    return float(_sample_std(values))


def rmsh(values):
    """Root mean square height of a window's elevations."""
    return window_std(values)


def ldre(cells):
    """
    Standard deviation of the residuals of ``cells`` (x, y, z rows) about
    their least-squares plane.
    """
    cells = np.asarray(cells, dtype=float).reshape(-1, 3)
    if len(cells) < 4:
        raise InsufficientDataError('LDRE needs at least 4 cells (got %d)' % len(cells))
    cloud = PointCloud(cells)
    return window_std(detrend(cloud, fit_plane(cloud)).z)


def check_extent(dem, scale):
    nrows, ncols = dem.shape
    if nrows < scale or ncols < scale:
        raise InsufficientExtentError(
            'a %dx%d DEM is smaller than one %dx%d window' % (nrows, ncols, scale, scale))


def blocks(values, scale):
    """
    (R, C, w*w) view of the non-overlapping blocks of a 2D array, rows of
    each block in row-major order.
    """
    R, C = values.shape[0] // scale, values.shape[1] // scale
    trimmed = values[:R * scale, :C * scale]
    return trimmed.reshape(R, scale, C, scale).swapaxes(1, 2).reshape(R, C, scale * scale)


class TerrainLayers:
    """
    Full-resolution layers shared by every index and scale of one DEM,
    each computed once on first use.
    """

    def __init__(self, dem):
        self.dem = dem

    @cached_property
    def slope(self):
        return slope_map(self.dem)

    @cached_property
    def curvature(self):
        return curvature_map(self.dem)

    @cached_property
    def residual(self):
        return residual_topography(self.dem)

    def warm(self, indices):
        """Compute the layers ``indices`` need; call before fanning out to threads."""
        wanted = {RoughnessIndex.SLOPE: 'slope', RoughnessIndex.CURVATURE: 'curvature',
                  RoughnessIndex.RT: 'residual'}
        for index in indices:
            if index in wanted:
                getattr(self, wanted[index])
        return self


def _ldre_blocks(z, scale, cell):
    # every full block shares one design: centered cell offsets
    offsets = (np.arange(scale) - (scale - 1) / 2) * cell
    v, u = np.meshgrid(-offsets, offsets, indexing='ij')
    u, v = u.ravel(), v.ravel()
    shifted = z - z[..., :1]
    dz = shifted - shifted.mean(axis=-1, keepdims=True)
    b1 = (dz * u).sum(axis=-1, keepdims=True) / (u @ u)
    b2 = (dz * v).sum(axis=-1, keepdims=True) / (v @ v)
    return _sample_std(dz - b1 * u - b2 * v)


def roughness_map(dem, index, scale, layers=None):
    """
    One RoughnessMap for ``index`` at window ``scale``. A block holding
    any NoData cell is NoData.
    """
    index = RoughnessIndex(index)
    scale = check_window_scale(scale)
    check_extent(dem, scale)
    layers = layers or TerrainLayers(dem)

    if index == RoughnessIndex.RMSH:
        values = _sample_std(blocks(dem.values, scale))
    elif index == RoughnessIndex.LDRE:
        values = _ldre_blocks(blocks(dem.values, scale), scale, dem.spec.cell)
    elif index == RoughnessIndex.RT:
        values = _sample_std(blocks(layers.residual.values, scale))
    elif index == RoughnessIndex.SLOPE:
        values = _sample_std(blocks(layers.slope.values, scale))
    else:
        values = _sample_std(blocks(layers.curvature.values, scale))

    valid = blocks(dem.mask, scale).all(axis=-1)
    values = np.where(valid, values, np.nan)
    logger.debug('%s at w=%d: %dx%d map, %d NoData block(s)', index.value, scale,
                 values.shape[0], values.shape[1], int(valid.size - valid.sum()))
    return RoughnessMap(index, scale, dem.spec.coarsen(scale), values, valid)


def resolve_threads(threads):
    """0 means one worker per CPU."""
    return threads if threads and threads > 0 else (os.cpu_count() or 1)


def roughness_maps(dem, scales, indices=None, threads=0):
    """
    Maps for every (scale, index) pair, keyed by that pair and ordered by
    scale then index. Blocks are computed on a thread pool; every map
    depends only on its own inputs, so the output is the same for any
    thread count.
    """
    indices = RoughnessIndex.ordered() if indices is None else tuple(RoughnessIndex(i) for i in indices)
    scales = sorted({check_window_scale(w) for w in scales})
    if not scales:
        raise InsufficientExtentError('no window scale requested')
    check_extent(dem, scales[-1])
    layers = TerrainLayers(dem).warm(indices)
    jobs = [(w, index) for w in scales for index in indices]
    with ThreadPoolExecutor(max_workers=resolve_threads(threads)) as pool:
        maps = pool.map(lambda job: roughness_map(dem, job[1], job[0], layers), jobs)
        result = dict(zip(jobs, maps))
    logger.info('computed %d roughness map(s) for scales %s', len(result), scales)
    return result


def normalize01(grid):
    """
    Min-max scale the valid cells of a map (or any Dem) to [0, 1]. A
    constant map becomes all zeros.
    """
    if not grid.mask.any():
        raise EmptyMapError('cannot normalize a map without valid cells')
    valid = grid.values[grid.mask]
    vmin, vmax = valid.min(), valid.max()
    if vmax == vmin:
        scaled = np.zeros(grid.shape)
    else:
        scaled = (grid.values - vmin) / (vmax - vmin)
    return grid.with_values(np.where(grid.mask, scaled, np.nan))
