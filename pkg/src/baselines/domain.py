# baselines/domain.py
from dataclasses import dataclass

import numpy as np

from spectral.domain import Network


def _readonly(values, dtype=float):
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PermutationAlignment:
    """Перестановка узлов perm: выровненная сеть y[perm][:, perm]."""

    permutation: np.ndarray
    residual: float

    def __post_init__(self):
        object.__setattr__(self, "permutation", _readonly(self.permutation, int))

    def apply(self, adjacency):
        return np.asarray(adjacency)[np.ix_(self.permutation, self.permutation)]


@dataclass(frozen=True, eq=False)
class FrechetMeanResult:
    mean: Network
    aligned: tuple[Network, ...]
    iterations: int
    converged: bool


@dataclass(frozen=True, eq=False)
class TangentPCAResult:
    """
    Касательный МГК в пространстве графов.

    components - симметричные матрицы c x n x n, ортонормированные в скалярном
    произведении Фробениуса; logs - векторизованные логарифмы N x n(n+1)/2.
    """

    components: np.ndarray
    scores: np.ndarray
    explained_variance_ratio: np.ndarray
    mean: Network
    logs: np.ndarray

    def __post_init__(self):
        for name in ("components", "scores", "explained_variance_ratio", "logs"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))

    @property
    def num_components(self) -> int:
        return self.components.shape[0]
