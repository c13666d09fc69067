# barycentric/tests.py
import numpy as np
import pytest
from django.test import SimpleTestCase

from barycentric.exceptions import DegenerateTriangle, SolverFailure
from barycentric.services.polygon import embed_points_2d, embed_polygon_2d
from barycentric.services.qp import solve_qp
from barycentric.services.subspace import (
    affine_dimension,
    compute_halfspaces,
    contains,
    kkt_residual,
    project,
    project_convex,
)
from spectral.domain import Spectrum
from spectral.services.geometry import spectrum_distance


def spectra(*rows):
    return [Spectrum(np.array(row, dtype=float)) for row in rows]


def random_refs(rng, n, m):
    return [Spectrum(np.sort(rng.normal(size=n))) for _ in range(m)]


def affine_weights(rng, m, spread=2.0):
    weights = rng.normal(scale=spread, size=m)
    return weights - (weights.sum() - 1.0) / m


class HalfspaceTests(SimpleTestCase):
    def setUp(self):
        self.refs = spectra([0, 1], [-1, 2])
        self.bs = compute_halfspaces(self.refs)

    def test_two_node_example(self):
        """Проверка: для опор (0,1), (-1,2) полупространство mu_2 - mu_1 >= 0"""
        self.assertEqual(len(self.bs.halfspaces), 1)
        alpha, beta = self.bs.halfspaces[0]
        np.testing.assert_allclose(alpha, [-1, 1], atol=1e-12)
        self.assertAlmostEqual(beta, 0.0, places=12)

    def test_reference_slack_equals_gaps(self):
        """Проверка: запас каждой опоры по ограничению равен её спектральному зазору"""
        rng = np.random.default_rng(3)
        refs = random_refs(rng, 6, 3)
        bs = compute_halfspaces(refs)
        for ref in refs:
            slack = bs.alphas @ ref.values - bs.betas
            np.testing.assert_allclose(slack, np.diff(ref.values), atol=1e-9)

    def test_halfspace_count(self):
        rng = np.random.default_rng(4)
        for n in range(2, 9):
            bs = compute_halfspaces(random_refs(rng, n, min(n, 3)))
            self.assertEqual(len(bs.halfspaces), n - 1)

    def test_repeated_eigenvalues_give_trivial_halfspace(self):
        bs = compute_halfspaces(spectra([0, 0, 1], [-1, -1, 2]))
        np.testing.assert_allclose(bs.alphas[0], 0.0, atol=1e-12)
        self.assertAlmostEqual(bs.betas[0], 0.0, places=12)

    def test_affine_dimension(self):
        rng = np.random.default_rng(5)
        for m in range(1, 5):
            self.assertEqual(affine_dimension(random_refs(rng, 8, m)), m - 1)


class ContainsTests(SimpleTestCase):
    def setUp(self):
        self.refs = spectra([0, 1], [-1, 2])
        self.bs = compute_halfspaces(self.refs)

    def test_references_and_midpoint(self):
        for ref in self.refs:
            self.assertTrue(contains(self.bs, ref))
        self.assertTrue(contains(self.bs, Spectrum(np.array([-0.5, 1.5]))))

    def test_affine_combination_outside_cone(self):
        """Проверка: комбинация с весами (2, -1) даёт (1, 0) и лежит вне подпространства"""
        point = 2 * self.refs[0].values - self.refs[1].values
        np.testing.assert_allclose(point, [1, 0])
        self.assertFalse(np.all(self.bs.alphas @ point >= self.bs.betas - 1e-9))
        self.assertFalse(contains(self.bs, point))

    def test_point_off_affine_hull(self):
        bs = compute_halfspaces(spectra([0, 1, 2], [-1, 1, 3]))
        self.assertFalse(contains(bs, Spectrum(np.array([0.0, 0.0, 5.0]))))


def test_polytope_agrees_with_sorted_order():
    """Проверка: полупространства эквивалентны упорядоченности барицентра"""
    rng = np.random.default_rng(2024)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, min(n, 4) + 1))
        refs = random_refs(rng, n, m)
        bs = compute_halfspaces(refs)
        assert len(bs.halfspaces) == n - 1
        matrix = bs.reference_matrix

        for ref in refs:
            assert contains(bs, ref)
        for weights in rng.dirichlet(np.ones(m), size=10):
            assert contains(bs, Spectrum(matrix @ weights))

        for _ in range(10):
            point = matrix @ affine_weights(rng, m)
            sorted_directly = bool(np.all(np.diff(point) >= -1e-9))
            by_halfspaces = bool(np.all(bs.alphas @ point >= bs.betas - 1e-9))
            assert sorted_directly == by_halfspaces
            assert contains(bs, point) == sorted_directly


class ProjectionTests(SimpleTestCase):
    def setUp(self):
        self.refs = spectra([0, 1], [-1, 2])
        self.bs = compute_halfspaces(self.refs)
        self.s = Spectrum(np.array([0.0, 0.5]))

    def test_plain_hand_example(self):
        """Проверка: (0, 0.5) проецируется в (0.25, 0.75) с весами (1.25, -0.25)"""
        projection = project(self.bs, self.s)
        np.testing.assert_allclose(projection.point.values, [0.25, 0.75], atol=1e-9)
        np.testing.assert_allclose(projection.coords.weights, [1.25, -0.25], atol=1e-9)
        self.assertAlmostEqual(projection.squared_error, 0.125, places=9)

    def test_convex_hand_example(self):
        """Проверка: выпуклая проекция (0, 0.5) попадает в вершину (0, 1)"""
        projection = project_convex(self.bs, self.s)
        np.testing.assert_allclose(projection.point.values, [0.0, 1.0], atol=1e-9)
        np.testing.assert_allclose(projection.coords.weights, [1.0, 0.0], atol=1e-9)
        self.assertAlmostEqual(projection.squared_error, 0.25, places=9)

    def test_point_inside_hull_is_fixed(self):
        inside = Spectrum(np.array([-0.3, 1.3]))
        plain = project(self.bs, inside)
        convex = project_convex(self.bs, inside)
        self.assertLessEqual(plain.squared_error, 1e-20)
        np.testing.assert_allclose(plain.point.values, convex.point.values, atol=1e-12)
        np.testing.assert_allclose(convex.coords.weights, [0.7, 0.3], atol=1e-12)

    def test_cone_constraint_active(self):
        """Проверка: проекция не выходит из конуса, даже если аффинная прямая выходит"""
        bs = compute_halfspaces(spectra([0, 1], [1, 1.5]))
        projection = project(bs, Spectrum(np.array([3.0, 3.0])))
        values = projection.point.values
        self.assertGreaterEqual(values[1] - values[0], -1e-12)
        np.testing.assert_allclose(values, [2.0, 2.0], atol=1e-9)

    def test_minimum_norm_weights_for_dependent_refs(self):
        """Проверка: при зависимых опорах возвращаются веса минимальной нормы"""
        refs = spectra([0, 1], [-1, 2], [-0.5, 1.5])
        projection = project(compute_halfspaces(refs), self.s)
        np.testing.assert_allclose(projection.point.values, [0.25, 0.75], atol=1e-9)
        weights = projection.coords.weights
        self.assertAlmostEqual(weights.sum(), 1.0, places=12)
        self.assertLessEqual(
            np.linalg.norm(weights), np.linalg.norm([1.25, -0.25, 0.0]) + 1e-12
        )


def test_projection_properties():
    """Проверка: идемпотентность, условия ККТ, доминирование выпуклой проекции"""
    rng = np.random.default_rng(77)
    for _ in range(60):
        n = int(rng.integers(2, 8))
        m = int(rng.integers(1, min(n, 4) + 1))
        bs = compute_halfspaces(random_refs(rng, n, m))
        s1 = Spectrum(np.sort(rng.normal(scale=1.5, size=n)))
        s2 = Spectrum(np.sort(rng.normal(scale=1.5, size=n)))

        plain = project(bs, s1)
        convex = project_convex(bs, s1)
        assert project(bs, plain.point).squared_error <= 1e-12
        assert kkt_residual(bs, s1, plain) <= 1e-8
        assert kkt_residual(bs, s1, convex, convex=True) <= 1e-8
        assert convex.squared_error >= plain.squared_error - 1e-12
        assert np.all(convex.coords.weights >= -1e-12)
        assert np.all(convex.coords.weights <= 1 + 1e-12)
        np.testing.assert_allclose(
            bs.reference_matrix @ plain.coords.weights, plain.point.values, atol=1e-9
        )

        other = project(bs, s2)
        assert spectrum_distance(plain.point, other.point) <= (
            spectrum_distance(s1, s2) + 1e-9
        )


class SolverTests(SimpleTestCase):
    def test_dependent_equality_rows(self):
        solution = solve_qp(
            hessian=np.eye(2),
            linear=np.zeros(2),
            eq_matrix=np.array([[1.0, 1.0], [2.0, 2.0]]),
            eq_rhs=np.array([1.0, 2.0]),
            ineq_matrix=np.zeros((0, 2)),
            ineq_rhs=np.zeros(0),
            start=np.array([1.0, 0.0]),
        )
        np.testing.assert_allclose(solution.x, [0.5, 0.5], atol=1e-12)

    def test_iteration_budget(self):
        refs = spectra([0, 1], [-1, 2])
        matrix = compute_halfspaces(refs).reference_matrix
        with self.assertRaises(SolverFailure):
            solve_qp(
                hessian=matrix.T @ matrix,
                linear=-matrix.T @ np.array([0.0, 0.5]),
                eq_matrix=np.ones((1, 2)),
                eq_rhs=np.ones(1),
                ineq_matrix=np.diff(matrix, axis=0),
                ineq_rhs=np.zeros(1),
                start=np.array([1.0, 0.0]),
                max_iter=1,
            )

    def test_flat_objective_directions(self):
        """Проверка: вырожденный гессиан не мешает остановке"""
        hessian = np.zeros((4, 4))
        hessian[0, 0] = 1.0
        solution = solve_qp(
            hessian=hessian,
            linear=np.array([-2.0, 0.0, 0.0, 0.0]),
            eq_matrix=np.ones((1, 4)),
            eq_rhs=np.ones(1),
            ineq_matrix=np.eye(4),
            ineq_rhs=np.zeros(4),
            start=np.array([0.0, 1.0, 0.0, 0.0]),
        )
        np.testing.assert_allclose(solution.x, [1.0, 0.0, 0.0, 0.0], atol=1e-12)


@pytest.mark.parametrize("n,m", [(2, 5), (3, 7), (4, 8), (5, 12)])
def test_more_references_than_affine_rank(n, m):
    """Проверка: опор больше n+1, проекции сходятся и удовлетворяют условиям ККТ"""
    rng = np.random.default_rng(n * 100 + m)
    refs = random_refs(rng, n, m)
    bs = compute_halfspaces(refs)
    for ref in refs[:3]:
        assert project(bs, ref).squared_error <= 1e-12
        assert project_convex(bs, ref).squared_error <= 1e-12

    for _ in range(5):
        s = Spectrum(np.sort(rng.normal(scale=1.5, size=n)))
        plain = project(bs, s)
        convex = project_convex(bs, s)
        # оболочка опор заполняет R^n, подпространство совпадает с конусом
        assert plain.squared_error <= 1e-12
        assert kkt_residual(bs, s, plain) <= 1e-8
        assert kkt_residual(bs, s, convex, convex=True) <= 1e-8
        assert contains(bs, convex.point)
        assert np.all(convex.coords.weights >= -1e-12)
        assert abs(convex.coords.weights.sum() - 1.0) <= 1e-9


class PolygonTests(SimpleTestCase):
    def test_closed_tetragon(self):
        """Проверка: пять узлов дают замкнутый четырёхугольник с n-1 сторонами"""
        refs = spectra(
            [-2, -1, 0, 1, 2], [-2, -0.5, 0.5, 1, 2], [-2, -1, 0.5, 1.5, 2]
        )
        polygon = embed_polygon_2d(refs)
        self.assertTrue(polygon.closed)
        self.assertEqual(polygon.num_sides, 4)

    def test_closed_triangle(self):
        refs = spectra([-3, -1, 1, 3], [-2.5, -1.5, 1, 3], [-3, -1, 1.5, 2.5])
        polygon = embed_polygon_2d(refs)
        self.assertTrue(polygon.closed)
        self.assertEqual(len(polygon.vertices_2d), 3)
        self.assertLessEqual(polygon.num_sides, 3)

    def test_open_polygon(self):
        """Проверка: при трёх узлах многоугольник не замкнут"""
        refs = spectra([-1, 0, 1], [-2, 0, 2], [-1, -1, 2])
        polygon = embed_polygon_2d(refs)
        self.assertFalse(polygon.closed)

    def test_planar_distances_match_spectral(self):
        refs = spectra([-3, -1, 1, 3], [-2.5, -1.5, 1, 3], [-3, -1, 1.5, 2.5])
        points = embed_polygon_2d(refs).ref_points_2d
        for i in range(3):
            for j in range(i + 1, 3):
                self.assertAlmostEqual(
                    np.linalg.norm(points[i] - points[j]),
                    spectrum_distance(refs[i], refs[j]),
                    places=9,
                )

    def test_references_inside_polygon(self):
        refs = spectra([-2, -1, 0, 1, 2], [-2, -0.5, 0.5, 1, 2], [-2, -1, 0.5, 1.5, 2])
        polygon = embed_polygon_2d(refs)
        slack = polygon.ref_points_2d @ polygon.halfplane_alphas.T - polygon.halfplane_betas
        self.assertTrue(np.all(slack >= -1e-9))
        np.testing.assert_allclose(
            embed_points_2d(polygon, np.eye(3)), polygon.ref_points_2d
        )

    def test_collinear_rejected(self):
        with self.assertRaises(DegenerateTriangle):
            embed_polygon_2d(spectra([0, 1], [0, 2], [0, 3]))

    def test_duplicate_rejected(self):
        with self.assertRaises(DegenerateTriangle):
            embed_polygon_2d(spectra([0, 1], [0, 1], [0, 3]))


@pytest.mark.parametrize("n", [4, 6, 8])
def test_polygon_sides_bounded_by_nodes(n):
    rng = np.random.default_rng(n)
    refs = random_refs(rng, n, 3)
    polygon = embed_polygon_2d(refs)
    assert len(polygon.vertices_2d) <= n - 1 + (0 if polygon.closed else -1)
