# baselines/services/tangent.py
import logging

import numpy as np
from sklearn.decomposition import PCA

from baselines.domain import TangentPCAResult
from baselines.exceptions import IndexOutOfRange
from baselines.services.alignment import frechet_mean
from bsa.exceptions import DegenerateDataset, InvalidConfig
from spectral.domain import Network

logger = logging.getLogger(__name__)


def _coefficients(n):
    rows, cols = np.triu_indices(n)
    return rows, cols, np.where(rows == cols, 1.0, np.sqrt(2))


def vectorize_symmetric(matrices):
    """
    Изометричная векторизация симметричных матриц по верхнему треугольнику.

    Внедиагональные элементы умножаются на sqrt(2), поэтому скалярное
    произведение векторов равно произведению Фробениуса матриц.
    """
    matrices = np.asarray(matrices, dtype=float)
    rows, cols, coeffs = _coefficients(matrices.shape[-1])
    return matrices[..., rows, cols] * coeffs


def unvectorize_symmetric(vectors):
    vectors = np.asarray(vectors, dtype=float)
    size = vectors.shape[-1]
    n = int(round((np.sqrt(8 * size + 1) - 1) / 2))
    if n * (n + 1) // 2 != size:
        raise ValueError(f"Длина {size} не соответствует симметричной матрице")
    rows, cols, coeffs = _coefficients(n)
    matrices = np.zeros(vectors.shape[:-1] + (n, n))
    matrices[..., rows, cols] = vectors / coeffs
    matrices[..., cols, rows] = vectors / coeffs
    return matrices


def tangent_pca(dataset, num_components, tol=None, max_iter=None, parallel=False):
    """
    Касательный МГК: МГК логарифмов в касательном пространстве в среднем Фреше.

    Логарифм сети - разность её выравнивания на среднее и самого среднего.

    Args:
        dataset: список сетей одного размера
        num_components: число компонент c <= min(N - 1, n(n+1)/2)
        tol, max_iter: параметры frechet_mean
        parallel: выравнивать сети в нескольких потоках

    Returns:
        TangentPCAResult

    Raises:
        TooLarge: если n больше SPECTRA_PERMUTATION_MAX_NODES
        DegenerateDataset: если все логарифмы нулевые
    """
    size = len(dataset)
    if size == 0:
        raise DegenerateDataset("Пустая выборка")
    n = dataset[0].n
    limit = min(size - 1, n * (n + 1) // 2)
    if not 1 <= num_components <= limit:
        raise InvalidConfig(
            f"Число компонент {num_components} вне диапазона [1, {limit}]"
        )

    result = frechet_mean(dataset, tol=tol, max_iter=max_iter, parallel=parallel)
    mean = result.mean.adjacency
    logs = vectorize_symmetric(
        np.stack([net.adjacency for net in result.aligned]) - mean
    )
    total = float(np.sum((logs - logs.mean(axis=0)) ** 2))
    if total <= np.finfo(float).eps * max(1.0, float(np.sum(mean**2))):
        raise DegenerateDataset("Нулевая дисперсия в касательном пространстве")

    pca = PCA(n_components=num_components, svd_solver="full")
    scores = pca.fit_transform(logs)
    logger.info(
        f"Tangent PCA: {num_components} components explain "
        f"{pca.explained_variance_ratio_.sum():.4f} of variance"
    )
    return TangentPCAResult(
        components=unvectorize_symmetric(pca.components_),
        scores=scores,
        explained_variance_ratio=pca.explained_variance_ratio_,
        mean=result.mean,
        logs=logs,
    )


def component_deformation(result, component, t):
    """Сеть mean + t V_component; веса могут стать отрицательными."""
    if not 0 <= component < result.num_components:
        raise IndexOutOfRange(
            f"Компонента {component} вне диапазона [0, {result.num_components})"
        )
    adjacency = result.mean.adjacency + t * result.components[component]
    return Network(id=f"component-{component}@{t:+g}", adjacency=adjacency)


def pca_reconstruction_errors(result, logs=None):
    """Суммарная квадратичная ошибка восстановления логарифмов по 1..c компонентам."""
    logs = result.logs if logs is None else np.asarray(logs, dtype=float)
    centered = logs - result.logs.mean(axis=0)
    components = vectorize_symmetric(result.components)
    errors = []
    for k in range(1, result.num_components + 1):
        approximation = (centered @ components[:k].T) @ components[:k]
        errors.append(float(np.sum((centered - approximation) ** 2)))
    return np.array(errors)
