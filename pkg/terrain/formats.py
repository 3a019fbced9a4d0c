"""
Readers and writers for the toolkit's artifacts: XYZ clouds, ESRI ASCII
grids, CSV matrices and PGM renderings.
"""
import csv
import logging
import math

import numpy as np
from PIL import Image

from .exceptions import EmptyMapError, ParseError
from .gridding import Dem, GridSpec
from .pointcloud import load_xyz, text_lines, write_xyz
from .roughness import normalize01

logger = logging.getLogger(__name__)

NODATA_VALUE = -9999
HEADER_KEYS = ('ncols', 'nrows', 'xllcorner', 'yllcorner', 'xllcenter',
               'yllcenter', 'cellsize', 'nodata_value')


def _number(value):
    return repr(float(value))


def read_xyz(path):
    with open(path, 'rb') as f:
        return load_xyz(f)


def save_xyz(cloud, path, header=None):
    with open(path, 'w') as f:
        write_xyz(cloud, f, header=header)


def write_esri_ascii(grid, path):
    """Write a Dem (or any map shaped as one), north row first."""
    spec = grid.spec
    with open(path, 'w') as f:
        f.write('ncols %d\n' % spec.ncols)
        f.write('nrows %d\n' % spec.nrows)
        f.write('xllcorner %s\n' % _number(spec.x0))
        f.write('yllcorner %s\n' % _number(spec.y0))
        f.write('cellsize %s\n' % _number(spec.cell))
        f.write('NODATA_value %d\n' % NODATA_VALUE)
        for values, valid in zip(grid.values.tolist(), grid.mask.tolist()):
            f.write(' '.join(_number(v) if ok else str(NODATA_VALUE)
                             for v, ok in zip(values, valid)))
            f.write('\n')
    logger.info('wrote %s', path)


def _dimension(header, key):
    value = header[key]
    if not value.is_integer() or value < 1:
        raise ParseError('%s must be a positive integer, got %r' % (key, value))
    return int(value)


def read_esri_ascii(path):
    """
    Read an ESRI ASCII grid. Header keys are case-insensitive; cell-center
    registration (xllcenter/yllcenter) is converted to corners.
    """
    with open(path, 'rb') as f:
        lines = [line for _, line in text_lines(f)]

    header = {}
    body_start = 0
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            continue
        key = tokens[0].lower()
        if key not in HEADER_KEYS:
            body_start = lineno - 1
            break
        if len(tokens) != 2:
            raise ParseError('header line needs a key and one value', line=lineno)
        try:
            header[key] = float(tokens[1])
        except ValueError:
            raise ParseError('non-numeric header value %r' % tokens[1], line=lineno)
    else:
        body_start = len(lines)

    for key in ('ncols', 'nrows', 'cellsize'):
        if key not in header:
            raise ParseError('missing %s in header' % key)
    ncols, nrows = _dimension(header, 'ncols'), _dimension(header, 'nrows')
    cell = header['cellsize']
    if 'xllcorner' in header and 'yllcorner' in header:
        x0, y0 = header['xllcorner'], header['yllcorner']
    elif 'xllcenter' in header and 'yllcenter' in header:
        x0, y0 = header['xllcenter'] - cell / 2, header['yllcenter'] - cell / 2
    else:
        raise ParseError('missing xllcorner/yllcorner (or xllcenter/yllcenter) in header')
    nodata = header.get('nodata_value', NODATA_VALUE)

    try:
        values = np.array(' '.join(lines[body_start:]).split(), dtype=float)
    except ValueError as exc:
        raise ParseError('non-numeric grid value: %s' % exc)
    if values.size != ncols * nrows:
        raise ParseError('expected %d values for %d rows x %d columns, found %d'
                         % (ncols * nrows, nrows, ncols, values.size))
    values = values.reshape(nrows, ncols)
    mask = (values != nodata) & np.isfinite(values)
    return Dem(GridSpec(x0, y0, ncols, nrows, cell), np.where(mask, values, np.nan), mask)


def _csv_number(value):
    return 'nan' if math.isnan(value) else repr(float(value))


def write_matrix_csv(labels, matrix, path):
    """Full symmetric matrix with index names heading rows and columns."""
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow([''] + [label.value for label in labels])
        for label, row in zip(labels, matrix.tolist()):
            writer.writerow([label.value] + [_csv_number(v) for v in row])
    logger.info('wrote %s', path)


def read_matrix_csv(path):
    """Return (labels, matrix) from a file written by ``write_matrix_csv``."""
    with open(path, newline='') as f:
        rows = list(csv.reader(f))
    labels = rows[0][1:]
    return labels, np.array([[float(v) for v in row[1:]] for row in rows[1:]])


def write_summary_csv(summary, path):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['index', 'mean_r', 'mean_r2'])
        for label, mean_r in summary.mean_r.items():
            writer.writerow([label.value, _csv_number(mean_r), _csv_number(summary.mean_r2[label])])
    logger.info('wrote %s', path)


def gray_levels(grid):
    """
    Min-max normalized map as 8-bit gray levels, round half up; NoData
    renders as 0.
    """
    if not grid.mask.any():
        raise EmptyMapError('nothing to render: every cell is NoData')
    scaled = normalize01(grid)
    levels = np.floor(np.where(grid.mask, scaled.values, 0.0) * 255 + 0.5)
    return levels.astype(np.uint8)


def write_pgm(grid, path):
    """Binary PGM (P5, maxval 255) through Pillow's PPM writer."""
    Image.fromarray(gray_levels(grid)).save(path, format='PPM')
    logger.info('wrote %s', path)
