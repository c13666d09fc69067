# spectral/tests/factories.py
import factory
import numpy as np

from spectral.domain import Network


def random_symmetric(n, seed, scale=1.0, zero_diagonal=False):
    rng = np.random.default_rng(seed)
    matrix = rng.normal(scale=scale, size=(n, n))
    matrix = (matrix + matrix.T) / 2
    if zero_diagonal:
        np.fill_diagonal(matrix, 0.0)
    return matrix


def random_orthogonal(n, seed):
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


class NetworkFactory(factory.Factory):
    class Meta:
        model = Network

    id = factory.Sequence(lambda k: f"net{k}")
    adjacency = factory.Sequence(lambda k: random_symmetric(5, seed=k))
