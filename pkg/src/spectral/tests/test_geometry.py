import numpy as np
import pytest
from django.test import SimpleTestCase
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spectral.domain import Network, Spectrum, TangentVector
from spectral.exceptions import LeftCone, SizeMismatch
from spectral.services.geometry import (
    barycenter,
    exp_map,
    geodesic_point,
    log_map,
    pairwise_spectral_distances,
    spectral_distance,
    spectrum_distance,
    tangent_inner,
)
from spectral.services.networks import spectrum
from spectral.tests.factories import random_orthogonal, random_symmetric

MATRIX_DIMENSION = 4


class SpectralDistanceTests(SimpleTestCase):
    def test_zero_on_itself(self):
        net = Network("x", random_symmetric(4, seed=1))
        self.assertEqual(spectral_distance(net, net), 0.0)

    def test_diagonal_example(self):
        """Проверка: d(diag(1,2), diag(3,5)) = sqrt(13)"""
        a = Network("a", np.diag([1.0, 2.0]))
        b = Network("b", np.diag([3.0, 5.0]))
        self.assertAlmostEqual(spectral_distance(a, b), np.sqrt(13), places=9)

    def test_size_mismatch(self):
        with self.assertRaises(SizeMismatch):
            spectral_distance(Network("a", np.eye(2)), Network("b", np.eye(3)))

    def test_pairwise_matrix(self):
        spectra = np.array([[0.0, 1.0], [0.0, 2.0], [3.0, 5.0]])
        distances = pairwise_spectral_distances(spectra)
        self.assertAlmostEqual(distances[0, 1], 1.0)
        self.assertAlmostEqual(distances[0, 2], 5.0)
        np.testing.assert_allclose(distances, distances.T)


class LogGeodesicTests(SimpleTestCase):
    def setUp(self):
        self.a = Spectrum(np.array([0.0, 2.0]))
        self.b = Spectrum(np.array([2.0, 4.0]))

    def test_log_of_base_is_zero(self):
        np.testing.assert_array_equal(log_map(self.a, self.a).components, [0.0, 0.0])

    def test_log_example(self):
        log = log_map(Spectrum(np.zeros(2)), Spectrum(np.array([1.0, 3.0])))
        np.testing.assert_array_equal(log.components, [1.0, 3.0])

    def test_exp_inverts_log(self):
        np.testing.assert_allclose(
            exp_map(self.a, log_map(self.a, self.b)).values, self.b.values
        )

    def test_weighted_logs_vanish_at_barycenter(self):
        """Проверка: взвешенная сумма логарифмов равна нулю ровно в барицентре"""
        rng = np.random.default_rng(11)
        spectra = [Spectrum(np.sort(rng.normal(size=5))) for _ in range(4)]
        weights = rng.dirichlet(np.ones(4))
        base = barycenter(spectra, weights)
        total = sum(w * log_map(base, s).components for w, s in zip(weights, spectra))
        np.testing.assert_allclose(total, 0.0, atol=1e-12)

        shifted = Spectrum(base.values + 0.1)
        total = sum(
            w * log_map(shifted, s).components for w, s in zip(weights, spectra)
        )
        self.assertGreater(np.linalg.norm(total), 1e-3)

    def test_geodesic_endpoints(self):
        np.testing.assert_allclose(geodesic_point(self.a, self.b, 0.0).values, [0, 2])
        np.testing.assert_allclose(geodesic_point(self.a, self.b, 1.0).values, [2, 4])
        np.testing.assert_allclose(geodesic_point(self.a, self.b, 0.5).values, [1, 3])

    def test_geodesic_is_constant_speed(self):
        rng = np.random.default_rng(5)
        a = Spectrum(np.sort(rng.normal(size=6)))
        b = Spectrum(np.sort(rng.normal(size=6)))
        total = spectrum_distance(a, b)
        for s, t in rng.uniform(size=(10, 2)):
            gap = spectrum_distance(geodesic_point(a, b, s), geodesic_point(a, b, t))
            self.assertAlmostEqual(gap, abs(t - s) * total, places=10)

    def test_extrapolation_leaving_cone_rejected(self):
        a = Spectrum(np.array([0.0, 1.0]))
        b = Spectrum(np.array([0.0, 0.0]))
        geodesic_point(a, b, 1.0)
        with self.assertRaises(LeftCone):
            geodesic_point(a, b, 2.0)

    def test_unsorted_spectrum_rejected(self):
        with self.assertRaises(LeftCone):
            Spectrum(np.array([1.0, 0.0]))


class TangentInnerTests(SimpleTestCase):
    def test_zero(self):
        u = TangentVector(np.array([1.0, 2.0]))
        self.assertEqual(tangent_inner(u, TangentVector(np.zeros(2))), 0.0)

    def test_example(self):
        u = TangentVector(np.array([1.0, 2.0]))
        v = TangentVector(np.array([3.0, 4.0]))
        self.assertEqual(tangent_inner(u, v), 11.0)

    def test_consistent_with_distance(self):
        rng = np.random.default_rng(9)
        a = Spectrum(np.sort(rng.normal(size=5)))
        b = Spectrum(np.sort(rng.normal(size=5)))
        log = log_map(a, b)
        self.assertAlmostEqual(tangent_inner(log, log), spectrum_distance(a, b) ** 2)


def test_metric_axioms():
    """Проверка: аксиомы метрики на 100 тройках сетей"""
    for k in range(100):
        x, y, z = (
            Network(name, random_symmetric(6, seed=3 * k + i))
            for i, name in enumerate("xyz")
        )
        assert spectral_distance(x, y) == spectral_distance(y, x)
        assert spectral_distance(x, x) <= 1e-12
        assert spectral_distance(x, z) <= (
            spectral_distance(x, y) + spectral_distance(y, z) + 1e-9
        )


@seed(1)
@settings(max_examples=50, deadline=None)
@given(
    first=arrays(
        np.float64,
        (MATRIX_DIMENSION, MATRIX_DIMENSION),
        elements=st.floats(min_value=-5.0, max_value=5.0),
    ),
    second=arrays(
        np.float64,
        (MATRIX_DIMENSION, MATRIX_DIMENSION),
        elements=st.floats(min_value=-5.0, max_value=5.0),
    ),
    rotation_seed=st.integers(min_value=0, max_value=10_000),
)
def test_conjugation_invariance(first, second, rotation_seed):
    """Проверка: расстояние не меняется при ортогональном сопряжении"""
    a = Network("a", (first + first.T) / 2)
    b = (second + second.T) / 2
    rotation = random_orthogonal(MATRIX_DIMENSION, rotation_seed)
    conjugated = rotation @ b @ rotation.T
    conjugated = Network("rb", (conjugated + conjugated.T) / 2)
    assert spectral_distance(a, conjugated) == pytest.approx(
        spectral_distance(a, Network("b", b)), abs=1e-9
    )


def test_spectrum_of_permuted_network_unchanged(network):
    perm = np.array([4, 2, 0, 1, 3])
    permuted = Network("p", network.adjacency[np.ix_(perm, perm)])
    np.testing.assert_allclose(
        spectrum(permuted).values, spectrum(network).values, atol=1e-12
    )
