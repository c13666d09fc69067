# spectral/services/geometry.py
import numpy as np
from scipy.spatial.distance import pdist, squareform

from spectral.domain import Spectrum, TangentVector
from spectral.exceptions import LeftCone, SizeMismatch
from spectral.services.networks import check_same_size, spectrum


def spectrum_distance(a, b):
    """Евклидово расстояние между упорядоченными спектрами."""
    check_same_size(a, b)
    return float(np.linalg.norm(a.values - b.values))


def spectral_distance(a, b):
    """
    Факторное расстояние между сетями: l2-расстояние отсортированных спектров.

    Raises:
        SizeMismatch: если сети разного размера
    """
    check_same_size(a, b)
    return spectrum_distance(spectrum(a), spectrum(b))


def pairwise_spectral_distances(spectra):
    """Матрица попарных расстояний N x N для спектров, уложенных построчно."""
    spectra = np.asarray(spectra, dtype=float)
    if spectra.shape[0] < 2:
        return np.zeros((spectra.shape[0], spectra.shape[0]))
    return squareform(pdist(spectra, metric="euclidean"))


def log_map(base, target):
    """Логарифм в пространстве спектров: λ(target) - λ(base)."""
    check_same_size(base, target)
    return TangentVector(components=target.values - base.values)


def exp_map(base, tangent):
    """
    Обратное к log_map: base + tangent.

    Raises:
        SizeMismatch: если размеры не совпадают
        LeftCone: если результат не упорядочен
    """
    if base.n != tangent.n:
        raise SizeMismatch(f"Размеры не совпадают: {base.n} и {tangent.n}")
    return Spectrum(values=base.values + tangent.components)


def geodesic_point(a, b, t):
    """
    Точка (1 - t) a + t b единственной геодезической между спектрами.

    При t вне [0, 1] продолжение допускается, только если точка остаётся в C_n.
    """
    check_same_size(a, b)
    values = (1.0 - t) * a.values + t * b.values
    try:
        return Spectrum(values=values)
    except LeftCone:
        raise LeftCone(f"Продолжение геодезической при t={t} выходит из конуса")


def tangent_inner(u, v):
    """Евклидово скалярное произведение горизонтальных векторов."""
    if u.n != v.n:
        raise SizeMismatch(f"Размеры не совпадают: {u.n} и {v.n}")
    return float(np.dot(u.components, v.components))


def barycenter(spectra, weights):
    """
    Взвешенный барицентр спектров (сумма весов равна 1).

    Это точка, в которой взвешенная сумма логарифмов обращается в ноль.
    """
    weights = np.asarray(weights, dtype=float)
    if len(spectra) != weights.shape[0]:
        raise SizeMismatch("Число весов не совпадает с числом спектров")
    if not np.isclose(weights.sum(), 1.0, atol=1e-9):
        raise ValueError("Сумма барицентрических весов должна быть равна 1")
    stacked = np.vstack([s.values for s in spectra])
    return Spectrum(values=weights @ stacked)
