# baselines/tests/test_tangent.py
import numpy as np
import pytest
from django.test import SimpleTestCase

from baselines.exceptions import IndexOutOfRange
from baselines.services.tangent import (
    component_deformation,
    pca_reconstruction_errors,
    tangent_pca,
    unvectorize_symmetric,
    vectorize_symmetric,
)
from bsa.exceptions import DegenerateDataset, InvalidConfig
from network_datasets.services.generators import generate_two_parameter
from spectral.domain import Network
from spectral.tests.factories import random_symmetric


def weighted_path():
    matrix = np.zeros((4, 4))
    for (i, j), weight in zip(((0, 1), (1, 2), (2, 3)), (1.0, 2.0, 3.0)):
        matrix[i, j] = matrix[j, i] = weight
    return matrix


class VectorizationTests(SimpleTestCase):
    def test_isometry(self):
        """Проверка: скалярное произведение векторов равно произведению Фробениуса"""
        for seed in range(20):
            a = random_symmetric(5, seed=seed)
            b = random_symmetric(5, seed=seed + 50)
            self.assertAlmostEqual(
                float(vectorize_symmetric(a) @ vectorize_symmetric(b)),
                float(np.sum(a * b)),
                places=12,
            )

    def test_inverse(self):
        a = random_symmetric(4, seed=1)
        np.testing.assert_allclose(unvectorize_symmetric(vectorize_symmetric(a)), a)
        self.assertEqual(vectorize_symmetric(a).shape, (10,))

    def test_invalid_length(self):
        with self.assertRaises(ValueError):
            unvectorize_symmetric(np.zeros(7))


class TangentPCATests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.dataset = generate_two_parameter(16, seed=7).networks
        cls.result = tangent_pca(cls.dataset, 2)

    def test_two_components_explain_most_variance(self):
        """Проверка: две компоненты объясняют большую часть дисперсии"""
        ratios = self.result.explained_variance_ratio
        self.assertGreaterEqual(ratios.sum(), 0.75)
        self.assertLessEqual(ratios.sum(), 1.0 + 1e-12)
        self.assertGreaterEqual(ratios[0], ratios[1])
        self.assertTrue(np.all(ratios >= 0))

    def test_components_orthonormal(self):
        components = self.result.components
        gram = np.einsum("aij,bij->ab", components, components)
        np.testing.assert_allclose(gram, np.eye(2), atol=1e-9)
        for component in components:
            np.testing.assert_allclose(component, component.T)

    def test_scores_centered(self):
        self.assertEqual(self.result.scores.shape, (16, 2))
        np.testing.assert_allclose(self.result.scores.mean(axis=0), 0.0, atol=1e-9)

    def test_negative_edges_in_deformation(self):
        """Проверка: деформация вдоль компоненты даёт отрицательные рёбра"""
        minima = [
            component_deformation(self.result, c, t).adjacency.min()
            for c in (0, 1)
            for t in (-1.0, 1.0)
        ]
        self.assertLess(min(minima), 0.0)

    def test_deformation_is_linear(self):
        mean = component_deformation(self.result, 0, 0.0)
        np.testing.assert_array_equal(mean.adjacency, self.result.mean.adjacency)
        combined = component_deformation(self.result, 1, 0.3 + 0.4)
        np.testing.assert_allclose(
            combined.adjacency,
            self.result.mean.adjacency + 0.7 * self.result.components[1],
        )

    def test_component_index(self):
        with self.assertRaises(IndexOutOfRange):
            component_deformation(self.result, 2, 1.0)

    def test_reconstruction_errors_decrease(self):
        result = tangent_pca(self.dataset, 4)
        errors = pca_reconstruction_errors(result)
        self.assertEqual(len(errors), 4)
        self.assertTrue(np.all(np.diff(errors) <= 1e-12))


def test_line_dataset_has_single_component():
    """Проверка: выборка на прямой mean + tV объясняется одной компонентой"""
    rng = np.random.default_rng(3)
    direction = random_symmetric(4, seed=9, zero_diagonal=True)
    direction /= np.linalg.norm(direction)
    dataset = [
        Network(id=f"g{k}", adjacency=weighted_path() + t * direction)
        for k, t in enumerate(rng.uniform(-0.05, 0.05, size=6))
    ]
    result = tangent_pca(dataset, 2)
    assert result.explained_variance_ratio[0] == pytest.approx(1.0, abs=1e-9)


def test_identical_networks_are_degenerate():
    dataset = [Network(id=f"g{k}", adjacency=weighted_path()) for k in range(3)]
    with pytest.raises(DegenerateDataset):
        tangent_pca(dataset, 1)


def test_component_count_validated():
    dataset = [
        Network(id=f"g{k}", adjacency=random_symmetric(3, seed=k)) for k in range(3)
    ]
    with pytest.raises(InvalidConfig):
        tangent_pca(dataset, 3)
