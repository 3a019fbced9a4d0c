"""
Scattered XYZ ground samples: loading, spacing statistics and global
plane detrending.
"""
import io
import logging
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .exceptions import (DegenerateGeometryError, EmptyInputError,
                         InsufficientDataError, ParameterError, ParseError)

logger = logging.getLogger(__name__)

# smallest / largest eigenvalue of the centered normal matrix
DEGENERACY_RATIO = 1e-12


class Point3(NamedTuple):
    x: float
    y: float
    z: float


class PlaneFit(NamedTuple):
    """Coefficients of z = b0 + b1*x + b2*y."""
    b0: float
    b1: float
    b2: float

    def evaluate(self, x, y):
        return self.b0 + self.b1 * x + self.b2 * y


class PointCloud:
    """
    Immutable collection of 3D points stored as an (n, 3) float array.
    """
    __slots__ = ('_xyz',)

    def __init__(self, xyz):
        xyz = np.array(xyz, dtype=float)
        if xyz.size == 0:
            xyz = np.empty((0, 3))
        if xyz.ndim != 2 or xyz.shape[1] != 3:
            raise ParameterError('points must be given as (x, y, z) triples')
        if not np.isfinite(xyz).all():
            raise ParameterError('point coordinates must be finite')
        xyz.setflags(write=False)
        self._xyz = xyz

    @classmethod
    def from_points(cls, points):
        return cls([tuple(p) for p in points])

    @property
    def xyz(self):
        return self._xyz

    @property
    def x(self):
        return self._xyz[:, 0]

    @property
    def y(self):
        return self._xyz[:, 1]

    @property
    def z(self):
        return self._xyz[:, 2]

    @property
    def points(self):
        return [Point3(*map(float, row)) for row in self._xyz]

    @property
    def bounds(self):
        """(xmin, ymin, xmax, ymax) of the planimetric projection."""
        if not len(self):
            raise EmptyInputError('an empty point cloud has no bounds')
        xmin, ymin = self._xyz[:, :2].min(axis=0)
        xmax, ymax = self._xyz[:, :2].max(axis=0)
        return (float(xmin), float(ymin), float(xmax), float(ymax))

    def with_z(self, z):
        xyz = self._xyz.copy()
        xyz[:, 2] = z
        return PointCloud(xyz)

    def __len__(self):
        return self._xyz.shape[0]

    def __iter__(self):
        return iter(self.points)

    def __repr__(self):
        return '<PointCloud: %d points>' % len(self)


def text_lines(source):
    """Yield ``(lineno, text)`` for a byte or text stream, decoding UTF-8 line by line."""
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode('utf-8')
            except UnicodeDecodeError as exc:
                raise ParseError('invalid UTF-8 at byte %d' % exc.start, line=lineno)
        yield lineno, raw


def load_xyz(source):
    """
    Parse whitespace-delimited ``x y z`` lines from a byte or text stream.
    Lines starting with '#' and blank lines are skipped.
    """
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    elif isinstance(source, str):
        source = io.StringIO(source)
    rows = []
    for lineno, line in text_lines(source):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        tokens = stripped.split()
        if len(tokens) != 3:
            raise ParseError('expected 3 values "x y z", found %d' % len(tokens), line=lineno)
        try:
            row = tuple(float(t) for t in tokens)
        except ValueError:
            raise ParseError('non-numeric value in %r' % stripped, line=lineno)
        if not all(np.isfinite(row)):
            raise ParseError('non-finite value in %r' % stripped, line=lineno)
        rows.append(row)
    if not rows:
        raise EmptyInputError('no points found in input')
    cloud = PointCloud(rows)
    logger.info('loaded %d points, bounds %s', len(cloud), cloud.bounds)
    return cloud


def mean_spacing(cloud):
    """Mean 2D distance from each point to its nearest neighbor."""
    if len(cloud) < 2:
        raise InsufficientDataError('mean spacing needs at least 2 points (got %d)' % len(cloud))
    xy = cloud.xyz[:, :2]
    distances, _ = cKDTree(xy).query(xy, k=2)
    return float(np.mean(distances[:, 1]))


def check_planimetric_rank(xy):
    """
    Raise ``DegenerateGeometryError`` when the (x, y) samples cannot
    support a plane: fewer than 3 points, or collinear.
    """
    xy = np.asarray(xy, dtype=float)
    n = xy.shape[0]
    if n < 3:
        raise DegenerateGeometryError('a plane needs at least 3 points (got %d)' % n)
    d = xy - xy.mean(axis=0)
    normal = np.empty((3, 3))
    normal[0] = (n, d[:, 0].sum(), d[:, 1].sum())
    normal[1] = (normal[0, 1], d[:, 0] @ d[:, 0], d[:, 0] @ d[:, 1])
    normal[2] = (normal[0, 2], normal[1, 2], d[:, 1] @ d[:, 1])
    eig = np.linalg.eigvalsh(normal)
    if eig[0] < DEGENERACY_RATIO * eig[-1]:
        raise DegenerateGeometryError('points are collinear in (x, y); cannot fit a plane')


def fit_plane(cloud):
    """
    Ordinary least-squares plane z = b0 + b1*x + b2*y.

    Coordinates are centered on the centroid before solving; the
    coefficients are reported back in the original coordinates.
    """
    xyz = cloud.xyz
    check_planimetric_rank(xyz[:, :2])
    cx, cy, cz = xyz.mean(axis=0)
    dx = xyz[:, 0] - cx
    dy = xyz[:, 1] - cy
    dz = xyz[:, 2] - cz
    lhs = np.array([[dx @ dx, dx @ dy],
                    [dx @ dy, dy @ dy]])
    b1, b2 = np.linalg.solve(lhs, np.array([dx @ dz, dy @ dz]))
    b0 = cz - b1 * cx - b2 * cy
    plane = PlaneFit(float(b0), float(b1), float(b2))
    if not all(np.isfinite(plane)):
        raise DegenerateGeometryError('plane fit produced non-finite coefficients')
    return plane


def detrend(cloud, plane):
    """Replace every z by its residual from ``plane``."""
    if not all(np.isfinite(plane)):
        raise ParameterError('plane coefficients must be finite')
    return cloud.with_z(cloud.z - plane.evaluate(cloud.x, cloud.y))


def write_xyz(cloud, stream, header=None):
    """Write ``x y z`` lines with shortest round-trip floats."""
    if header:
        for line in header.splitlines():
            stream.write('# %s\n' % line)
    for x, y, z in cloud.xyz.tolist():
        stream.write('%r %r %r\n' % (x, y, z))
