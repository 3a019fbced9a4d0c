"""
Agreement between roughness maps: Pearson r, coefficient of determination,
5x5 comparison matrices and the window-size sweep.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy import stats

from .exceptions import (ConsistencyError, InputSetError, ShapeError,
                         UndefinedCorrelationError)
from .roughness import DEFAULT_SCALES, RoughnessIndex, roughness_maps

logger = logging.getLogger(__name__)

# R^2 against r^2 cross-check. Looser than the 1e-12 agreement of
# well-conditioned maps: nearly constant maps lose digits in the residual sum.
IDENTITY_TOLERANCE = 1e-9


def _common_cells(a, b):
    if a.shape != b.shape:
        raise ShapeError('cannot compare maps shaped %s and %s' % (a.shape, b.shape))
    both = a.mask & b.mask
    x, y = a.values[both], b.values[both]
    if x.size < 2:
        raise UndefinedCorrelationError('only %d cell(s) valid in both maps' % x.size)
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise UndefinedCorrelationError('a map is constant over the common cells')
    return x, y


def _moments(x, y):
    dx = x - x.mean()
    dy = y - y.mean()
    return dx, dy, dx @ dx, dy @ dy, dx @ dy


def pearson(a, b):
    """Pearson correlation coefficient over the cells valid in both maps."""
    x, y = _common_cells(a, b)
    return float(stats.pearsonr(x, y).statistic)


def r_squared(a, b):
    """
    Coefficient of determination of the least-squares regression of ``b``
    on ``a``. Cross-checked against pearson(a, b) squared.
    """
    dx, dy, sxx, syy, sxy = _moments(*_common_cells(a, b))
    slope = sxy / sxx
    residual = dy - slope * dx
    r2 = float(1.0 - (residual @ residual) / syy)
    r = sxy / math.sqrt(sxx * syy)
    if abs(r2 - r * r) > IDENTITY_TOLERANCE:
        raise ConsistencyError('regression R^2 %r disagrees with r^2 %r' % (r2, r * r))
    return r2


@dataclass(frozen=True)
class ComparisonMatrix:
    """
    Symmetric r and R^2 matrices for the five indices at one scale.
    Undefined entries are NaN.
    """
    scale: int
    labels: Tuple[RoughnessIndex, ...]
    r: np.ndarray
    r2: np.ndarray

    def value(self, a, b, squared=False):
        i, j = self.labels.index(RoughnessIndex(a)), self.labels.index(RoughnessIndex(b))
        return float((self.r2 if squared else self.r)[i, j])

    def pairs(self):
        """(index_a, index_b, r, r2) over the upper triangle, diagonal included."""
        for i, a in enumerate(self.labels):
            for j in range(i, len(self.labels)):
                yield a, self.labels[j], float(self.r[i, j]), float(self.r2[i, j])


def _self_correlation(m):
    try:
        _common_cells(m, m)
    except UndefinedCorrelationError:
        return math.nan
    return 1.0


def correlation_matrix(maps):
    """ComparisonMatrix of five maps holding every index exactly once."""
    maps = list(maps)
    indices = [m.index for m in maps]
    if sorted(indices) != sorted(RoughnessIndex.ordered()):
        raise InputSetError('expected each of %s exactly once, got %s' % (
            ', '.join(i.value for i in RoughnessIndex.ordered()),
            ', '.join(i.value for i in indices)))
    scales = {m.scale for m in maps}
    if len(scales) != 1:
        raise InputSetError('maps mix window scales %s' % sorted(scales))
    scale = scales.pop()
    by_index = {m.index: m for m in maps}
    labels = RoughnessIndex.ordered()
    ordered = [by_index[i] for i in labels]

    n = len(labels)
    r = np.full((n, n), np.nan)
    r2 = np.full((n, n), np.nan)
    for i in range(n):
        r[i, i] = r2[i, i] = _self_correlation(ordered[i])
        for j in range(i + 1, n):
            try:
                r[i, j] = r[j, i] = pearson(ordered[i], ordered[j])
                r2[i, j] = r2[j, i] = r_squared(ordered[i], ordered[j])
            except UndefinedCorrelationError as exc:
                logger.warning('r(%s, %s) at w=%d is undefined: %s',
                               labels[i].value, labels[j].value, scale, exc)
    return ComparisonMatrix(scale, labels, r, r2)


@dataclass(frozen=True)
class ScaleSweep:
    matrices: Tuple[ComparisonMatrix, ...]

    @property
    def scales(self):
        return tuple(m.scale for m in self.matrices)

    def for_scale(self, scale):
        for m in self.matrices:
            if m.scale == scale:
                return m
        raise KeyError(scale)

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return len(self.matrices)


def scale_sweep(dem, scales=DEFAULT_SCALES, threads=0):
    """
    All five roughness maps and their ComparisonMatrix for every scale,
    scales in increasing order.
    """
    maps = roughness_maps(dem, scales, threads=threads)
    matrices = []
    for w in sorted({scale for scale, _ in maps}):
        matrices.append(correlation_matrix(m for (scale, _), m in maps.items() if scale == w))
        logger.info('compared %d indices at w=%d', len(RoughnessIndex.ordered()), w)
    return ScaleSweep(tuple(matrices))


@dataclass(frozen=True)
class IndexSummary:
    scale: int
    mean_r: Dict[RoughnessIndex, float]
    mean_r2: Dict[RoughnessIndex, float]
    strongest: Tuple[RoughnessIndex, RoughnessIndex, float]
    weakest: Tuple[RoughnessIndex, RoughnessIndex, float]


def index_summary(matrix):
    """
    Mean r and R^2 of each index with the other four, and the pairs with
    the highest and lowest defined r. Undefined entries are skipped.
    """
    labels = matrix.labels
    off_diagonal = ~np.eye(len(labels), dtype=bool)
    mean_r, mean_r2 = {}, {}
    for i, label in enumerate(labels):
        row_r = matrix.r[i][off_diagonal[i]]
        row_r2 = matrix.r2[i][off_diagonal[i]]
        defined = ~np.isnan(row_r)
        mean_r[label] = float(row_r[defined].mean()) if defined.any() else math.nan
        mean_r2[label] = float(row_r2[defined].mean()) if defined.any() else math.nan

    pairs = [(a, b, r) for a, b, r, _ in matrix.pairs() if a != b and not math.isnan(r)]
    strongest = max(pairs, key=lambda p: p[2]) if pairs else (None, None, math.nan)
    weakest = min(pairs, key=lambda p: p[2]) if pairs else (None, None, math.nan)
    return IndexSummary(matrix.scale, mean_r, mean_r2, strongest, weakest)
