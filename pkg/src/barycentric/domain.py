# barycentric/domain.py
from dataclasses import dataclass

import numpy as np

from spectral.domain import Spectrum

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class BarycentricSubspace:
    """
    Барицентрическое подпространство опорных спектров.

    Многогранник задаётся n-1 полупространствами alpha_r^T mu >= beta_r
    внутри аффинной оболочки опорных спектров.
    """

    refs: tuple[Spectrum, ...]
    alphas: np.ndarray
    betas: np.ndarray

    def __post_init__(self):
        for name in ("alphas", "betas"):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def n(self) -> int:
        return self.refs[0].n

    @property
    def m(self) -> int:
        return len(self.refs)

    @property
    def halfspaces(self) -> list[tuple[np.ndarray, float]]:
        return [(alpha, float(beta)) for alpha, beta in zip(self.alphas, self.betas)]

    @property
    def reference_matrix(self) -> np.ndarray:
        """Опорные спектры по столбцам: матрица n x m."""
        return np.column_stack([ref.values for ref in self.refs])


@dataclass(frozen=True, eq=False)
class BarycentricCoordinates:
    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"Сумма весов {weights.sum()!r} не равна 1")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True, eq=False)
class Projection:
    coords: BarycentricCoordinates
    point: Spectrum
    squared_error: float


@dataclass(frozen=True, eq=False)
class Polygon2D:
    """Изометричная укладка двумерного барицентрического подпространства на плоскость."""

    vertices_2d: np.ndarray
    ref_points_2d: np.ndarray
    closed: bool
    halfplane_alphas: np.ndarray
    halfplane_betas: np.ndarray

    @property
    def num_sides(self) -> int:
        vertices = len(self.vertices_2d)
        if self.closed:
            return vertices
        return vertices + 1
