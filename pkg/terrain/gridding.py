"""
TIN gridding: Delaunay triangulation of the detrended points sampled with
barycentric linear interpolation at the cell centers of a regular grid.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay, QhullError, cKDTree

from .exceptions import DegenerateGeometryError, ParameterError, ShapeError
from .pointcloud import check_planimetric_rank
from .validators import check_cell_size

logger = logging.getLogger(__name__)

# tolerance of the point-in-triangle test, in barycentric units
BARYCENTRIC_EPS = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """
    Regular grid geometry. ``x0``/``y0`` are the west/south edges; row 0
    is the northernmost row.
    """
    x0: float
    y0: float
    ncols: int
    nrows: int
    cell: float

    def __post_init__(self):
        object.__setattr__(self, 'cell', check_cell_size(self.cell))
        for name in ('x0', 'y0'):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ('ncols', 'nrows'):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.ncols < 1 or self.nrows < 1:
            raise ParameterError('grid needs at least one row and one column')

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def cell_centers(self):
        """Return (X, Y) arrays of cell-center coordinates, shaped (nrows, ncols)."""
        xs = self.x0 + (np.arange(self.ncols) + 0.5) * self.cell
        ys = self.y0 + (self.nrows - np.arange(self.nrows) - 0.5) * self.cell
        return np.meshgrid(xs, ys)

    def coarsen(self, w):
        """
        Grid of the non-overlapping ``w`` x ``w`` blocks anchored at the
        northwest corner. Partial blocks at the south and east are dropped.
        """
        nrows, ncols = self.nrows // w, self.ncols // w
        north = self.y0 + self.nrows * self.cell
        return GridSpec(self.x0, north - nrows * w * self.cell, ncols, nrows, self.cell * w)


class Dem:
    """
    Elevation raster. NoData cells hold NaN in ``values`` and False in
    ``mask``. Both arrays are read-only.
    """

    def __init__(self, spec, values, mask=None):
        values = np.array(values, dtype=float)
        if values.shape != spec.shape:
            raise ShapeError('values shaped %s do not match grid %s' % (values.shape, spec.shape))
        if mask is None:
            mask = np.isfinite(values)
        else:
            mask = np.array(mask, dtype=bool)
            if mask.shape != spec.shape:
                raise ShapeError('mask shaped %s does not match grid %s' % (mask.shape, spec.shape))
            if not np.isfinite(values[mask]).all():
                raise ParameterError('valid cells must hold finite values')
        values[~mask] = np.nan
        values.setflags(write=False)
        mask.setflags(write=False)
        self.spec = spec
        self.values = values
        self.mask = mask

    @property
    def shape(self):
        return self.spec.shape

    @property
    def nodata_count(self):
        return int(self.mask.size - np.count_nonzero(self.mask))

    def with_values(self, values, mask=None):
        """Copy on the same grid with new values; NoData follows ``mask`` or stays as is."""
        return Dem(self.spec, values, self.mask if mask is None else mask)

    def __repr__(self):
        return '<%s: %dx%d, cell %r>' % (self.__class__.__name__, self.spec.nrows,
                                         self.spec.ncols, self.spec.cell)


def make_grid_spec(cloud, cell=1.0):
    """Grid covering the cloud bounds, anchored at (xmin, ymin)."""
    cell = check_cell_size(cell)
    xmin, ymin, xmax, ymax = cloud.bounds
    ncols = max(1, math.ceil((xmax - xmin) / cell))
    nrows = max(1, math.ceil((ymax - ymin) / cell))
    return GridSpec(xmin, ymin, ncols, nrows, cell)


class Tin:
    """
    Triangulated irregular network. ``triangles`` index rows of
    ``vertices`` and hold only triangles of positive area.
    """

    def __init__(self, vertices, locator):
        self.vertices = vertices
        self._locator = locator
        simplices = locator.simplices
        area = _doubled_areas(vertices[:, :2], simplices)
        scale = np.ptp(vertices[:, :2], axis=0).max() ** 2
        keep = np.abs(area) > 1e-14 * scale
        self.triangles = simplices[keep]
        # locator simplex index -> index into self.triangles, -1 for flat ones
        self._remap = np.full(len(simplices), -1)
        self._remap[keep] = np.arange(np.count_nonzero(keep))

    def locate(self, pts):
        """
        Return the containing triangle of every point, -1 outside the hull,
        and the barycentric weights (NaN outside).
        """
        pts = np.asarray(pts, dtype=float)
        found = self._locator.find_simplex(pts)
        tri = np.where(found >= 0, self._remap[np.maximum(found, 0)], -1)
        # hits on zero-area triangles fall back to a scan of the real ones
        for k in np.flatnonzero((found >= 0) & (tri < 0)):
            tri[k] = self._scan(pts[k])
        bary = np.full((len(pts), 3), np.nan)
        inside = tri >= 0
        bary[inside] = barycentric(pts[inside], self.vertices[self.triangles[tri[inside]], :2])
        return tri, bary

    def _scan(self, p):
        corners = self.vertices[self.triangles, :2]
        weights = barycentric(np.broadcast_to(p, (len(corners), 2)), corners)
        hits = np.flatnonzero((weights >= -BARYCENTRIC_EPS).all(axis=1))
        return hits[0] if len(hits) else -1

    def __len__(self):
        return len(self.triangles)


def _doubled_areas(xy, simplices):
    a, b, c = (xy[simplices[:, k]] for k in range(3))
    return (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])


def barycentric(pts, corners):
    """
    Barycentric weights of ``pts`` (n, 2) in triangles ``corners`` (n, 3, 2).
    """
    a, b, c = corners[:, 0], corners[:, 1], corners[:, 2]
    det = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    l1 = ((b[:, 0] - pts[:, 0]) * (c[:, 1] - pts[:, 1]) - (b[:, 1] - pts[:, 1]) * (c[:, 0] - pts[:, 0])) / det
    l2 = ((c[:, 0] - pts[:, 0]) * (a[:, 1] - pts[:, 1]) - (c[:, 1] - pts[:, 1]) * (a[:, 0] - pts[:, 0])) / det
    return np.column_stack([l1, l2, 1.0 - l1 - l2])


def _collapse_duplicates(xyz):
    """Keep the last point of every repeated (x, y) location, in file order."""
    reversed_xy = xyz[::-1, :2]
    _, first = np.unique(reversed_xy, axis=0, return_index=True)
    keep = np.sort(len(xyz) - 1 - first)
    dropped = len(xyz) - len(keep)
    if dropped:
        logger.warning('collapsed %d duplicate (x, y) point(s); the last occurrence wins', dropped)
    return xyz[keep]


def delaunay(cloud):
    """Delaunay triangulation of the planimetric projection of ``cloud``."""
    vertices = _collapse_duplicates(cloud.xyz)
    check_planimetric_rank(vertices[:, :2])
    try:
        locator = Delaunay(vertices[:, :2])
    except QhullError as exc:
        raise DegenerateGeometryError('triangulation failed: %s' % exc) from exc
    tin = Tin(vertices, locator)
    logger.info('triangulated %d vertices into %d triangles', len(vertices), len(tin))
    return tin


def interpolate_grid(tin, spec):
    """
    Sample the TIN at every cell center. Centers outside the convex hull
    are NoData.
    """
    X, Y = spec.cell_centers()
    pts = np.column_stack([X.ravel(), Y.ravel()])
    tri, bary = tin.locate(pts)
    inside = tri >= 0

    values = np.full(len(pts), np.nan)
    corner_z = tin.vertices[tin.triangles[tri[inside]], 2]
    z = (bary[inside] * corner_z).sum(axis=1)
    values[inside] = np.clip(z, corner_z.min(axis=1), corner_z.max(axis=1))

    # centers sitting on a vertex take its elevation verbatim
    if inside.any():
        dist, nearest = cKDTree(tin.vertices[:, :2]).query(pts[inside])
        on_vertex = dist == 0
        sub = values[inside]
        sub[on_vertex] = tin.vertices[nearest[on_vertex], 2]
        values[inside] = sub

    dem = Dem(spec, values.reshape(spec.shape), inside.reshape(spec.shape))
    logger.info('gridded %dx%d DEM at %r m, %d NoData cell(s)',
                spec.nrows, spec.ncols, spec.cell, dem.nodata_count)
    return dem
