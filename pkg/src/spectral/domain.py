# spectral/domain.py
from dataclasses import dataclass

import numpy as np

from spectral.exceptions import LeftCone, NonFinite

# Допуск на порядок собственных значений после арифметики с плавающей точкой
CONE_SLACK = 1e-9


def _frozen(values, ndim):
    array = np.array(values, dtype=float, copy=True)
    if array.ndim != ndim:
        raise ValueError(f"Ожидался массив размерности {ndim}, получен {array.ndim}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Network:
    """
    Взвешенная неориентированная сеть, заданная симметричной матрицей смежности.
    Петли допускаются (ненулевая диагональ).
    """

    id: str
    adjacency: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "adjacency", _frozen(self.adjacency, 2))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def __str__(self):
        return self.id


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Собственные значения по возрастанию: точка конуса C_n."""

    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values, 1)
        if not np.all(np.isfinite(values)):
            raise NonFinite("Спектр содержит бесконечные значения")
        scale = max(1.0, float(np.abs(values).max(initial=0.0)))
        if np.any(np.diff(values) < -CONE_SLACK * scale):
            raise LeftCone("Значения не упорядочены по возрастанию")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    spectrum: Spectrum
    basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", _frozen(self.basis, 2))

    def reconstruct(self, values=None) -> np.ndarray:
        """Сопрягает diag(values) базисом; по умолчанию собственным спектром."""
        diagonal = self.spectrum.values if values is None else np.asarray(values)
        return (self.basis * diagonal) @ self.basis.T


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Горизонтальный касательный вектор, отождествлённый с R^n."""

    components: np.ndarray

    def __post_init__(self):
        components = _frozen(self.components, 1)
        if not np.all(np.isfinite(components)):
            raise NonFinite("Касательный вектор содержит бесконечные значения")
        object.__setattr__(self, "components", components)

    @property
    def n(self) -> int:
        return self.components.shape[0]
