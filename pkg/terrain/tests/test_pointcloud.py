import io
import math

import numpy as np
from django.test import SimpleTestCase

from terrain.exceptions import (DegenerateGeometryError, EmptyInputError,
                                InsufficientDataError, ParameterError,
                                ParseError)
from terrain.pointcloud import (PlaneFit, Point3, PointCloud, detrend,
                                fit_plane, load_xyz, mean_spacing, write_xyz)


def random_cloud(seed=0, n=200, plane=(0.0, 0.0, 0.0), noise=1.0):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-50, 50, n)
    y = rng.uniform(-50, 50, n)
    b0, b1, b2 = plane
    z = b0 + b1 * x + b2 * y + rng.normal(0, noise, n)
    return PointCloud(np.column_stack([x, y, z]))


class LoadXyzTest(SimpleTestCase):

    def test_parses_points_in_file_order(self):
        cloud = load_xyz(io.BytesIO(b'0 0 1\n1 0 2\n'))
        self.assertEqual(len(cloud), 2)
        self.assertEqual(cloud.points, [Point3(0, 0, 1), Point3(1, 0, 2)])
        self.assertEqual(cloud.bounds, (0.0, 0.0, 1.0, 0.0))

    def test_skips_comments_and_blank_lines(self):
        cloud = load_xyz(io.BytesIO(b'# hdr\n\n1 2 3\n   \n'))
        self.assertEqual(cloud.points, [Point3(1, 2, 3)])

    def test_accepts_text_streams(self):
        cloud = load_xyz(io.StringIO('1.5\t2.5   3.5\n'))
        self.assertEqual(cloud.points, [Point3(1.5, 2.5, 3.5)])

    def test_wrong_arity_reports_line_number(self):
        with self.assertRaises(ParseError) as ctx:
            load_xyz(io.BytesIO(b'1 2\n'))
        self.assertEqual(ctx.exception.line, 1)

    def test_non_numeric_token_reports_line_number(self):
        with self.assertRaises(ParseError) as ctx:
            load_xyz(io.BytesIO(b'# header\n0 0 0\n1 x 2\n'))
        self.assertEqual(ctx.exception.line, 3)
        self.assertIn('line 3', str(ctx.exception))

    def test_invalid_utf8_reports_line_number(self):
        with self.assertRaises(ParseError) as ctx:
            load_xyz(io.BytesIO(b'0 0 1\n\xff 0 2\n1 1 3\n'))
        self.assertEqual(ctx.exception.line, 2)
        with self.assertRaises(ParseError):
            load_xyz(b'0 0 1\n1 0 \xe9\n')

    def test_non_finite_values_are_rejected(self):
        with self.assertRaises(ParseError):
            load_xyz(io.BytesIO(b'0 0 nan\n'))

    def test_no_points_is_an_empty_input(self):
        with self.assertRaises(EmptyInputError):
            load_xyz(io.BytesIO(b'# only a comment\n\n'))
        with self.assertRaises(EmptyInputError):
            load_xyz(io.BytesIO(b''))

    def test_written_cloud_reads_back_exactly(self):
        cloud = random_cloud(seed=3, n=50)
        buf = io.StringIO()
        write_xyz(cloud, buf, header='detrended')
        again = load_xyz(io.StringIO(buf.getvalue()))
        np.testing.assert_array_equal(again.xyz, cloud.xyz)


class PointCloudTest(SimpleTestCase):

    def test_bounds_are_componentwise_extremes(self):
        cloud = PointCloud([(3, -1, 0), (-2, 4, 1), (0, 0, 9)])
        self.assertEqual(cloud.bounds, (-2.0, -1.0, 3.0, 4.0))

    def test_rejects_non_finite_coordinates(self):
        with self.assertRaises(ParameterError):
            PointCloud([(0, 0, math.inf)])

    def test_values_are_read_only(self):
        cloud = PointCloud([(0, 0, 0)])
        with self.assertRaises(ValueError):
            cloud.xyz[0, 2] = 1.0


class MeanSpacingTest(SimpleTestCase):

    def test_unit_square_corners(self):
        cloud = PointCloud([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
        self.assertAlmostEqual(mean_spacing(cloud), 1.0, places=12)

    def test_symmetric_pair(self):
        cloud = PointCloud([(0, 0, 0), (3, 4, 10)])
        self.assertAlmostEqual(mean_spacing(cloud), 5.0, places=12)

    def test_matches_brute_force_nearest_neighbors(self):
        rng = np.random.default_rng(11)
        xy = rng.uniform(0, 10, (100, 2))
        cloud = PointCloud(np.column_stack([xy, rng.normal(size=100)]))
        nearest = []
        for i in range(len(xy)):
            d = [math.hypot(*(xy[i] - xy[j])) for j in range(len(xy)) if j != i]
            nearest.append(min(d))
        self.assertAlmostEqual(mean_spacing(cloud), sum(nearest) / len(nearest), places=12)

    def test_invariant_under_translation(self):
        cloud = random_cloud(seed=5, n=80)
        shifted = PointCloud(cloud.xyz + np.array([1000.0, -250.0, 7.0]))
        self.assertAlmostEqual(mean_spacing(cloud), mean_spacing(shifted), places=9)

    def test_needs_two_points(self):
        with self.assertRaises(InsufficientDataError):
            mean_spacing(PointCloud([(0, 0, 0)]))


class FitPlaneTest(SimpleTestCase):

    def assertPlaneAlmostEqual(self, plane, expected, tol=1e-9):
        for got, want in zip(plane, expected):
            self.assertLessEqual(abs(got - want), tol, (plane, expected))

    def test_recovers_exact_plane(self):
        rng = np.random.default_rng(1)
        x, y = rng.uniform(-10, 10, (2, 40))
        cloud = PointCloud(np.column_stack([x, y, 2 + 3 * x - y]))
        self.assertPlaneAlmostEqual(fit_plane(cloud), (2, 3, -1))

    def test_horizontal_plane(self):
        cloud = PointCloud([(0, 0, 5), (1, 0, 5), (0, 1, 5), (3, 2, 5)])
        self.assertPlaneAlmostEqual(fit_plane(cloud), (5, 0, 0))

    def test_symmetric_noise_cancels(self):
        rng = np.random.default_rng(2)
        x, y = rng.uniform(0, 10, (2, 30))
        xyz = np.concatenate([np.column_stack([x, y, x + 0.1]),
                              np.column_stack([x, y, x - 0.1])])
        plane = fit_plane(PointCloud(xyz))
        self.assertPlaneAlmostEqual(plane, (0, 1, 0))

        design = np.column_stack([np.ones(len(xyz)), xyz[:, 0], xyz[:, 1]])
        oracle, *_ = np.linalg.lstsq(design, xyz[:, 2], rcond=None)
        self.assertPlaneAlmostEqual(plane, oracle)

    def test_residuals_are_orthogonal_to_the_design(self):
        cloud = random_cloud(seed=4, plane=(10, 0.3, -0.2))
        r = detrend(cloud, fit_plane(cloud)).z
        scale = np.abs(cloud.xyz).max() * len(cloud)
        for weight in (np.ones(len(cloud)), cloud.x, cloud.y):
            self.assertLessEqual(abs(r @ weight), 1e-8 * scale * np.abs(weight).max())

    def test_translation_equivariance(self):
        cloud = random_cloud(seed=6)
        shifted = PointCloud(cloud.xyz + np.array([0.0, 0.0, 123.0]))
        a, b = fit_plane(cloud), fit_plane(shifted)
        self.assertAlmostEqual(b.b0, a.b0 + 123.0, delta=1e-9)
        self.assertAlmostEqual(b.b1, a.b1, delta=1e-9)
        self.assertAlmostEqual(b.b2, a.b2, delta=1e-9)

    def test_large_projected_coordinates(self):
        rng = np.random.default_rng(8)
        x = 500000 + rng.uniform(0, 350, 200)
        y = 4200000 + rng.uniform(0, 350, 200)
        cloud = PointCloud(np.column_stack([x, y, 1500 + 0.02 * (x - 500000) - 0.01 * (y - 4200000)]))
        plane = fit_plane(cloud)
        self.assertAlmostEqual(plane.b1, 0.02, delta=1e-9)
        self.assertAlmostEqual(plane.b2, -0.01, delta=1e-9)

    def test_collinear_points_are_degenerate(self):
        cloud = PointCloud([(0, 0, 1), (1, 1, 2), (2, 2, 3), (5, 5, 0)])
        with self.assertRaises(DegenerateGeometryError):
            fit_plane(cloud)

    def test_two_points_are_degenerate(self):
        with self.assertRaises(DegenerateGeometryError):
            fit_plane(PointCloud([(0, 0, 0), (1, 0, 1)]))


class DetrendTest(SimpleTestCase):

    def test_own_plane_leaves_zero_residuals(self):
        rng = np.random.default_rng(9)
        x, y = rng.uniform(0, 20, (2, 60))
        cloud = PointCloud(np.column_stack([x, y, 2 + 3 * x - y]))
        residual = detrend(cloud, fit_plane(cloud))
        self.assertLessEqual(np.abs(residual.z).max(), 1e-9)
        np.testing.assert_array_equal(residual.xyz[:, :2], cloud.xyz[:, :2])

    def test_horizontal_cloud(self):
        cloud = PointCloud([(0, 0, 5), (1, 0, 5), (0, 1, 5)])
        self.assertEqual(detrend(cloud, PlaneFit(5, 0, 0)).z.tolist(), [0.0, 0.0, 0.0])

    def test_mean_residual_is_zero(self):
        for seed in range(5):
            cloud = random_cloud(seed=seed, plane=(40, 0.5, 0.1), noise=3.0)
            residual = detrend(cloud, fit_plane(cloud))
            self.assertLessEqual(abs(residual.z.mean()), 1e-9)

    def test_refit_of_detrended_cloud_is_flat(self):
        cloud = random_cloud(seed=12, plane=(-7, 0.2, 0.9))
        refit = fit_plane(detrend(cloud, fit_plane(cloud)))
        for coefficient in refit:
            self.assertLessEqual(abs(coefficient), 1e-8)

    def test_non_finite_plane_is_rejected(self):
        with self.assertRaises(ParameterError):
            detrend(PointCloud([(0, 0, 0)]), PlaneFit(math.nan, 0, 0))
