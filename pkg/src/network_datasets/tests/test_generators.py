# network_datasets/tests/test_generators.py
import numpy as np
import pytest
from django.test import SimpleTestCase

from network_datasets.services.generators import (
    generate_clustered,
    generate_two_parameter,
    template_adjacency,
    two_parameter_adjacency,
)
from spectral.domain import Network
from spectral.services.geometry import pairwise_spectral_distances
from spectral.services.networks import spectra_matrix, spectrum


def edge_count(matrix):
    return int(np.count_nonzero(np.triu(matrix, k=1)))


def spectrum_sum(matrix):
    return spectrum(Network(id="x", adjacency=matrix)).values.sum()


class TwoParameterTests(SimpleTestCase):
    def test_tree(self):
        """Проверка: X(1, 0) - дерево из пяти рёбер без петель"""
        matrix = two_parameter_adjacency(1.0, 0.0)
        self.assertEqual(edge_count(matrix), 5)
        self.assertTrue(np.all(np.diag(matrix) == 0))
        self.assertAlmostEqual(float(spectrum_sum(matrix)), 0.0, places=12)

    def test_added_edges(self):
        eight = two_parameter_adjacency(1.2, -0.3)
        hourglass = two_parameter_adjacency(0.7, 0.4)
        self.assertEqual(edge_count(eight), 7)
        self.assertEqual(edge_count(hourglass), 7)
        self.assertEqual(eight[0, 1], 0.3)
        self.assertEqual(hourglass[0, 3], 0.4)
        self.assertEqual(hourglass[2, 3], 0.7)

    def test_sample(self):
        dataset = generate_two_parameter(16, seed=7)
        self.assertEqual(len(dataset), 16)
        self.assertEqual(dataset.n, 6)
        self.assertEqual(dataset.meta["seed"], "7")
        for net, label in zip(dataset, dataset.labels):
            central = net.adjacency[2, 3]
            self.assertTrue(0.5 <= central <= 1.5)
            self.assertTrue(label.split("(")[0] in ("eight", "tree", "hourglass"))

    def test_determinism(self):
        first = generate_two_parameter(5, seed=3)
        second = generate_two_parameter(5, seed=3)
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a.adjacency, b.adjacency)
        self.assertEqual(first.labels, second.labels)

    def test_invalid_size(self):
        with self.assertRaises(ValueError):
            generate_two_parameter(0, seed=1)


class ClusteredTests(SimpleTestCase):
    def test_noiseless_templates(self):
        """Проверка: при sigma = 0 выборка повторяет шаблоны"""
        dataset = generate_clustered(2, sigma=0.0, seed=1)
        self.assertEqual(len(dataset), 6)
        for net, label in zip(dataset, dataset.labels):
            np.testing.assert_array_equal(net.adjacency, template_adjacency(label))

    def test_template_spectra(self):
        complete = spectra_matrix(generate_clustered(1, sigma=0.0).networks)[2]
        np.testing.assert_allclose(complete, [-0.5] * 9 + [4.5], atol=1e-12)
        star = spectra_matrix(generate_clustered(1, sigma=0.0).networks)[0]
        np.testing.assert_allclose(star, [-3.0] + [0.0] * 8 + [3.0], atol=1e-12)

    def test_meshed_star(self):
        matrix = template_adjacency("meshed-star")
        self.assertEqual(edge_count(matrix), 1 + 2 * 8)
        self.assertEqual(matrix[2, 3], 0.0)

    def test_noise_keeps_structure(self):
        dataset = generate_clustered(5, sigma=0.05, seed=42)
        self.assertEqual(len(dataset), 15)
        self.assertEqual(dataset.n, 10)
        for net in dataset:
            self.assertTrue(np.all(net.adjacency >= 0))
            self.assertTrue(np.all(np.diag(net.adjacency) == 0))
            np.testing.assert_array_equal(net.adjacency, net.adjacency.T)

    def test_clusters_separated(self):
        """Проверка: кластеры хорошо разделены в спектральной метрике"""
        dataset = generate_clustered(5, sigma=0.05, seed=42)
        distances = pairwise_spectral_distances(spectra_matrix(dataset.networks))
        labels = np.array(dataset.labels)
        same = labels[:, None] == labels[None, :]
        off_diagonal = ~np.eye(len(labels), dtype=bool)
        self.assertGreater(
            distances[~same].min(), distances[same & off_diagonal].max()
        )


@pytest.mark.parametrize("sigma", [-0.1])
def test_negative_sigma_rejected(sigma):
    with pytest.raises(ValueError):
        generate_clustered(1, sigma=sigma)
