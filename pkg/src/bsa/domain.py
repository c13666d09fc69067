# bsa/domain.py
from dataclasses import dataclass

import numpy as np

from barycentric.domain import BarycentricSubspace
from bsa.exceptions import InvalidConfig
from spectral.domain import Spectrum

SEARCH_EXHAUSTIVE = "exhaustive"
SEARCH_GREEDY_BACKWARD = "greedy-backward"
SEARCH_CHOICES = (SEARCH_EXHAUSTIVE, SEARCH_GREEDY_BACKWARD)


@dataclass(frozen=True)
class BSAConfig:
    """
    Параметры выборочного барицентрического анализа.

    num_refs - число опорных сетей m (размерность подпространства не выше m-1).
    labels вместе с distinct_labels ограничивает перебор наборами опор с
    попарно различными метками (поиск по заранее заданным кластерам).
    backward_start - число опор, с которого начинается обратный путь;
    по умолчанию вся выборка.
    """

    num_refs: int
    convex: bool = False
    search: str = SEARCH_EXHAUSTIVE
    min_ref_separation: float = 0.0
    parallel: bool = False
    labels: tuple | None = None
    distinct_labels: bool = False
    backward_start: int | None = None

    def __post_init__(self):
        if self.num_refs < 1:
            raise InvalidConfig("Число опор должно быть положительным")
        if self.search not in SEARCH_CHOICES:
            raise InvalidConfig(f"Неизвестный способ поиска: {self.search}")
        if self.min_ref_separation < 0:
            raise InvalidConfig("Минимальное расстояние между опорами отрицательно")
        if self.distinct_labels and self.labels is None:
            raise InvalidConfig("Для поиска по кластерам нужны метки")
        if self.search == SEARCH_GREEDY_BACKWARD and (
            self.distinct_labels or self.min_ref_separation > 0
        ):
            raise InvalidConfig("Фильтры опор доступны только при полном переборе")
        if self.backward_start is not None and self.backward_start < 1:
            raise InvalidConfig("Начало обратного пути должно быть положительным")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def variant(self) -> str:
        return "convex" if self.convex else "plain"

    def check_dataset_size(self, size):
        if self.num_refs > size:
            raise InvalidConfig(
                f"Опор больше, чем сетей в выборке: {self.num_refs} > {size}"
            )
        if self.labels is not None and len(self.labels) != size:
            raise InvalidConfig(
                f"Число меток {len(self.labels)} не совпадает с размером выборки {size}"
            )
        if self.backward_start is not None and self.backward_start > size:
            raise InvalidConfig(
                f"Начало обратного пути больше размера выборки: {self.backward_start}"
            )


@dataclass(frozen=True, eq=False)
class BSAResult:
    """Оптимальный набор опор, веса и проекции всех сетей выборки."""

    ref_indices: tuple[int, ...]
    weights: np.ndarray
    projections: tuple[Spectrum, ...]
    per_datum_sq_error: np.ndarray
    mse: float
    subspace: BarycentricSubspace
    convex: bool = False

    def __post_init__(self):
        for name in ("weights", "per_datum_sq_error"):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def num_refs(self) -> int:
        return len(self.ref_indices)

    @property
    def dimension(self) -> int:
        return self.num_refs - 1


@dataclass(frozen=True)
class BackwardStep:
    ref_indices: tuple[int, ...]
    mse: float

    @property
    def num_refs(self) -> int:
        return len(self.ref_indices)

    @property
    def dimension(self) -> int:
        return self.num_refs - 1


@dataclass(frozen=True)
class BackwardPath:
    """Вложенные наборы опор от начального числа опор до одной."""

    steps: tuple[BackwardStep, ...]
    convex: bool = False

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def step_for(self, num_refs):
        for step in self.steps:
            if step.num_refs == num_refs:
                return step
        raise KeyError(num_refs)
