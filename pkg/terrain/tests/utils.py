import numpy as np

from terrain.gridding import Dem, GridSpec
from terrain.roughness import RoughnessIndex, RoughnessMap


def make_dem(values, cell=1.0, x0=0.0, y0=0.0, mask=None):
    values = np.asarray(values, dtype=float)
    nrows, ncols = values.shape
    return Dem(GridSpec(x0, y0, ncols, nrows, cell), values, mask)


def plane_dem(nrows, ncols, a, b, c, cell=1.0):
    """DEM of z = a + b*x + c*y sampled at the cell centers."""
    spec = GridSpec(0.0, 0.0, ncols, nrows, cell)
    X, Y = spec.cell_centers()
    return Dem(spec, a + b * X + c * Y)


def make_map(values, index=RoughnessIndex.RMSH, scale=3, mask=None):
    values = np.asarray(values, dtype=float)
    nrows, ncols = values.shape
    return RoughnessMap(index, scale, GridSpec(0.0, 0.0, ncols, nrows, scale), values, mask)


def write_text(path, text):
    with open(path, 'w') as f:
        f.write(text)
    return str(path)
