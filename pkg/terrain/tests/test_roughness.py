import math
import time

import numpy as np
from django.test import SimpleTestCase

from terrain.exceptions import (DegenerateGeometryError, EmptyMapError,
                                InsufficientDataError, InsufficientExtentError,
                                ParameterError)
from terrain.raster import curvature_map, residual_topography, slope_map
from terrain.roughness import (DEFAULT_SCALES, RoughnessIndex, blocks, ldre,
                               normalize01, rmsh, roughness_map,
                               roughness_maps, window_std)
from terrain.synthetic import sinusoid_surface

from .utils import make_dem, make_map, plane_dem

INDICES = RoughnessIndex.ordered()
SCALING_INDICES = (RoughnessIndex.RMSH, RoughnessIndex.LDRE, RoughnessIndex.RT,
                   RoughnessIndex.CURVATURE)


def two_pass_std(values):
    values = [float(v) for v in values]
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / (len(values) - 1))


def naive_roughness(dem, index, w):
    """Materialize every block and call the per-window operations on it."""
    R, C = dem.shape[0] // w, dem.shape[1] // w
    X, Y = dem.spec.cell_centers()
    layer = {
        RoughnessIndex.RT: residual_topography(dem).values,
        RoughnessIndex.SLOPE: slope_map(dem).values,
        RoughnessIndex.CURVATURE: curvature_map(dem).values,
    }.get(index)
    out = np.full((R, C), np.nan)
    for bi in range(R):
        for bj in range(C):
            rows = slice(bi * w, (bi + 1) * w)
            cols = slice(bj * w, (bj + 1) * w)
            z = dem.values[rows, cols]
            if np.isnan(z).any():
                continue
            if index == RoughnessIndex.RMSH:
                out[bi, bj] = rmsh(z.ravel())
            elif index == RoughnessIndex.LDRE:
                cells = np.column_stack([X[rows, cols].ravel(), Y[rows, cols].ravel(), z.ravel()])
                out[bi, bj] = ldre(cells)
            else:
                out[bi, bj] = window_std(layer[rows, cols].ravel())
    return out


class WindowStatisticsTest(SimpleTestCase):

    def test_rmsh_of_constant_window(self):
        self.assertEqual(rmsh([2.7, 2.7, 2.7, 2.7]), 0.0)

    def test_rmsh_uses_n_minus_one(self):
        self.assertAlmostEqual(rmsh([1, 2, 3, 4]), math.sqrt(5 / 3), delta=1e-12)
        self.assertAlmostEqual(rmsh([1, 2, 3, 4]), two_pass_std([1, 2, 3, 4]), delta=1e-12)

    def test_rmsh_ignores_a_vertical_shift(self):
        values = np.random.default_rng(0).normal(size=25)
        self.assertAlmostEqual(rmsh(values + 10), rmsh(values), delta=1e-12)

    def test_window_std(self):
        self.assertEqual(window_std([0, 0]), 0.0)
        self.assertAlmostEqual(window_std([-1, 1]), math.sqrt(2), delta=1e-15)

    def test_window_std_is_order_free(self):
        values = np.random.default_rng(1).normal(size=9)
        self.assertAlmostEqual(window_std(values[::-1]), window_std(values), delta=1e-15)
        self.assertAlmostEqual(window_std(np.sort(values)), window_std(values), delta=1e-15)

    def test_needs_two_values(self):
        for fn in (rmsh, window_std):
            with self.assertRaises(InsufficientDataError):
                fn([1.0])


class LdreTest(SimpleTestCase):

    def window_cells(self, z, cell=1.0):
        w = z.shape[0]
        jj, ii = np.meshgrid(np.arange(w), np.arange(w))
        return np.column_stack([(jj.ravel() + 0.5) * cell, (w - ii.ravel() - 0.5) * cell, z.ravel()])

    def test_tilted_plane_has_no_residual(self):
        jj, ii = np.meshgrid(np.arange(5.0), np.arange(5.0))
        self.assertLessEqual(ldre(self.window_cells(3 + 0.7 * jj - 1.2 * ii)), 1e-12)

    def test_quadratic_matches_least_squares_oracle(self):
        x = np.array([-1.0, 0.0, 1.0])
        z = np.tile(x ** 2, (3, 1))
        cells = self.window_cells(z)
        design = np.column_stack([np.ones(9), cells[:, 0], cells[:, 1]])
        coef, *_ = np.linalg.lstsq(design, cells[:, 2], rcond=None)
        expected = np.std(cells[:, 2] - design @ coef, ddof=1)
        self.assertAlmostEqual(ldre(cells), expected, delta=1e-12)

    def test_never_exceeds_rmsh(self):
        rng = np.random.default_rng(2)
        for _ in range(1000):
            z = rng.normal(0, 3, (3, 3))
            self.assertLessEqual(ldre(self.window_cells(z)), rmsh(z.ravel()) + 1e-12)

    def test_needs_four_cells(self):
        with self.assertRaises(InsufficientDataError):
            ldre([(0, 0, 0), (1, 0, 0), (0, 1, 1)])

    def test_collinear_cells(self):
        with self.assertRaises(DegenerateGeometryError):
            ldre([(0, 0, 0), (1, 0, 1), (2, 0, 0), (3, 0, 2)])


class RoughnessMapTest(SimpleTestCase):

    def test_tiling_arithmetic(self):
        dem = make_dem(np.random.default_rng(3).normal(size=(6, 6)))
        result = roughness_map(dem, RoughnessIndex.RMSH, 3)
        self.assertEqual(result.shape, (2, 2))
        self.assertEqual(result.spec.cell, 3.0)
        self.assertEqual((result.index, result.scale), (RoughnessIndex.RMSH, 3))

    def test_blocks_consume_whole_windows_only(self):
        values = np.arange(11 * 8, dtype=float).reshape(11, 8)
        tiles = blocks(values, 3)
        self.assertEqual(tiles.shape, (3, 2, 9))
        self.assertEqual(tiles.size, (11 // 3) * (8 // 3) * 9)
        self.assertEqual(tiles[1, 1].tolist(), values[3:6, 3:6].ravel().tolist())

    def test_flat_dem_is_zero_everywhere(self):
        dem = make_dem(np.full((350, 350), 1234.5))
        started = time.perf_counter()
        maps = roughness_maps(dem, DEFAULT_SCALES, threads=1)
        elapsed = time.perf_counter() - started
        self.assertEqual(len(maps), 25)
        for grid in maps.values():
            self.assertTrue((grid.values == 0).all(), grid)
        self.assertLess(elapsed, 1.0)

    def test_matches_naive_tiling(self):
        rng = np.random.default_rng(4)
        dem = make_dem(rng.normal(0, 2, (33, 33)), cell=1.0)
        for index in INDICES:
            result = roughness_map(dem, index, 5)
            self.assertEqual(result.shape, (6, 6))
            np.testing.assert_allclose(result.values, naive_roughness(dem, index, 5), rtol=0, atol=1e-12)

    def test_matches_naive_tiling_at_every_default_scale(self):
        rng = np.random.default_rng(5)
        for _ in range(2):
            dem = make_dem(rng.normal(0, 5, (66, 66)), cell=0.5)
            maps = roughness_maps(dem, DEFAULT_SCALES, threads=2)
            for (w, index), grid in maps.items():
                np.testing.assert_allclose(grid.values, naive_roughness(dem, index, w), rtol=0, atol=1e-12)

    def test_thread_count_does_not_change_results(self):
        dem = sinusoid_surface(66, 66, seed=6)
        single = roughness_maps(dem, DEFAULT_SCALES, threads=1)
        many = roughness_maps(dem, DEFAULT_SCALES, threads=8)
        self.assertEqual(list(single), list(many))
        for key in single:
            np.testing.assert_array_equal(single[key].values, many[key].values)

    def test_nodata_block(self):
        values = np.random.default_rng(7).normal(size=(6, 6))
        values[4, 1] = np.nan
        for index in INDICES:
            result = roughness_map(make_dem(values), index, 3)
            self.assertEqual(result.mask.tolist(), [[True, True], [False, True]])
            self.assertTrue(np.isnan(result.values[1, 0]))

    def test_dem_smaller_than_a_window(self):
        with self.assertRaises(InsufficientExtentError):
            roughness_map(make_dem(np.zeros((4, 2))), RoughnessIndex.RMSH, 3)

    def test_invalid_scale(self):
        dem = make_dem(np.zeros((8, 8)))
        for w in (4, 1, 2.5):
            with self.assertRaises(ParameterError):
                roughness_map(dem, RoughnessIndex.RMSH, w)

    def test_values_are_non_negative(self):
        dem = sinusoid_surface(40, 40, seed=8)
        for grid in roughness_maps(dem, (3, 7)).values():
            self.assertTrue((grid.values >= 0).all())

    def test_ldre_never_exceeds_rmsh(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            dem = make_dem(rng.normal(0, 1, (64, 64)))
            for w in DEFAULT_SCALES:
                ldre_map = roughness_map(dem, RoughnessIndex.LDRE, w).values
                rmsh_map = roughness_map(dem, RoughnessIndex.RMSH, w).values
                self.assertTrue((ldre_map <= rmsh_map + 1e-12).all())


class RoughnessPropertiesTest(SimpleTestCase):

    def setUp(self):
        self.dem = sinusoid_surface(45, 45, cell=1.0, seed=10)

    def test_vertical_scale_equivariance(self):
        k = 2.5
        scaled = self.dem.with_values(self.dem.values * k)
        for index in SCALING_INDICES:
            base = roughness_map(self.dem, index, 5).values
            np.testing.assert_allclose(roughness_map(scaled, index, 5).values, k * base, rtol=1e-12, atol=0)
        slope = roughness_map(self.dem, RoughnessIndex.SLOPE, 5).values
        scaled_slope = roughness_map(scaled, RoughnessIndex.SLOPE, 5).values
        self.assertFalse(np.allclose(scaled_slope, k * slope, rtol=1e-6))

    def test_vertical_shift_invariance(self):
        shifted = self.dem.with_values(self.dem.values + 250.0)
        for index in INDICES:
            np.testing.assert_allclose(roughness_map(shifted, index, 5).values,
                                       roughness_map(self.dem, index, 5).values, rtol=0, atol=1e-12)

    def test_normalized_maps_ignore_vertical_scale(self):
        scaled = self.dem.with_values(self.dem.values * 7.0)
        for index in SCALING_INDICES:
            np.testing.assert_allclose(normalize01(roughness_map(scaled, index, 3)).values,
                                       normalize01(roughness_map(self.dem, index, 3)).values,
                                       rtol=0, atol=1e-12)

    def test_tilted_plane_only_moves_rmsh(self):
        dem = plane_dem(66, 66, 3.0, 0.4, -0.25)
        for w in DEFAULT_SCALES:
            maps = {index: roughness_map(dem, index, w).values[1:-1, 1:-1] for index in INDICES}
            for index in (RoughnessIndex.LDRE, RoughnessIndex.RT, RoughnessIndex.SLOPE,
                          RoughnessIndex.CURVATURE):
                self.assertLessEqual(np.abs(maps[index]).max(), 1e-9, (index, w))
            self.assertTrue((maps[RoughnessIndex.RMSH] > 0).all())


class NormalizeTest(SimpleTestCase):

    def test_affine_map_of_extremes(self):
        result = normalize01(make_map([[2.0, 4.0, 6.0]]))
        self.assertEqual(result.values.tolist(), [[0.0, 0.5, 1.0]])
        self.assertEqual(result.index, RoughnessIndex.RMSH)

    def test_constant_map(self):
        self.assertEqual(normalize01(make_map([[3.0, 3.0], [3.0, 3.0]])).values.tolist(),
                         [[0.0, 0.0], [0.0, 0.0]])

    def test_extremes_are_zero_and_one(self):
        values = np.random.default_rng(11).uniform(-5, 9, (12, 10))
        values[3, 3] = np.nan
        result = normalize01(make_map(values))
        self.assertEqual(np.nanmin(result.values), 0.0)
        self.assertEqual(np.nanmax(result.values), 1.0)
        self.assertFalse(result.mask[3, 3])

    def test_all_nodata(self):
        with self.assertRaises(EmptyMapError):
            normalize01(make_map(np.full((2, 2), np.nan)))
