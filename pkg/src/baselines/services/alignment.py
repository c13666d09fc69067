# baselines/services/alignment.py
import logging
from concurrent import futures
from functools import lru_cache
from itertools import chain, permutations
from math import factorial

import numpy as np
from django.conf import settings
from scipy.spatial.distance import pdist, squareform

from baselines.domain import FrechetMeanResult, PermutationAlignment
from baselines.exceptions import TooLarge
from spectral.domain import Network
from spectral.exceptions import SizeMismatch
from spectral.services.networks import check_same_size

logger = logging.getLogger(__name__)


def check_alignable(n):
    limit = getattr(settings, "SPECTRA_PERMUTATION_MAX_NODES", 10)
    if n > limit:
        raise TooLarge(f"Полный перебор {n}! перестановок: узлов больше {limit}")


@lru_cache(maxsize=4)
def permutation_table(n):
    """Все n! перестановок в лексикографическом порядке, по строке на перестановку."""
    count = factorial(n)
    flat = np.fromiter(
        chain.from_iterable(permutations(range(n))), dtype=np.int8, count=count * n
    )
    table = flat.reshape(count, n)
    table.setflags(write=False)
    return table


def best_permutation_alignment(x, y):
    """
    Точное выравнивание y на x перебором всех n! перестановок узлов.

    Минимизирует ||P y P^T - x||_F; при равенстве невязок возвращается
    лексикографически первая перестановка.

    Raises:
        SizeMismatch: если сети разного размера
        TooLarge: если n больше SPECTRA_PERMUTATION_MAX_NODES
    """
    check_same_size(x, y)
    check_alignable(x.n)
    chunk = getattr(settings, "SPECTRA_PERMUTATION_CHUNK", 20_000)
    target, source = x.adjacency, y.adjacency

    table = permutation_table(x.n)
    best, best_residual = None, np.inf
    for offset in range(0, len(table), chunk):
        perms = table[offset : offset + chunk]
        aligned = source[perms[:, :, None], perms[:, None, :]]
        residuals = np.sum((aligned - target) ** 2, axis=(1, 2))
        k = int(np.argmin(residuals))
        if residuals[k] < best_residual:
            best, best_residual = perms[k].astype(int), residuals[k]
    return PermutationAlignment(permutation=best, residual=float(np.sqrt(best_residual)))


def _stack(dataset):
    if not dataset:
        raise ValueError("Пустая выборка")
    sizes = sorted({net.n for net in dataset})
    if len(sizes) > 1:
        raise SizeMismatch(f"Сети выборки разного размера: {sizes}")
    check_alignable(sizes[0])
    return np.stack([net.adjacency for net in dataset])


def medoid_index(matrices):
    """Сеть с минимальной суммой квадратов расстояний Фробениуса до остальных."""
    if len(matrices) == 1:
        return 0
    distances = squareform(pdist(matrices.reshape(len(matrices), -1)))
    return int(np.argmin(np.sum(distances**2, axis=1)))


def frechet_mean(dataset, tol=None, max_iter=None, parallel=False):
    """
    Среднее Фреше в пространстве графов итеративным выравниванием.

    Начинает с медоида выборки; на каждой итерации выравнивает все сети на
    текущее среднее и усредняет выровненные матрицы, пока среднее не сдвинется
    меньше чем на tol по Фробениусу или не исчерпан max_iter.

    Args:
        dataset: список сетей одного размера
        tol: допуск сдвига; по умолчанию SPECTRA_FRECHET_TOL
        max_iter: число итераций; по умолчанию SPECTRA_FRECHET_MAX_ITER
        parallel: выравнивать сети одной итерации в нескольких потоках

    Returns:
        FrechetMeanResult: среднее, выровненные сети, число итераций, сходимость

    Raises:
        TooLarge: если n больше SPECTRA_PERMUTATION_MAX_NODES
    """
    if tol is None:
        tol = getattr(settings, "SPECTRA_FRECHET_TOL", 1e-9)
    if max_iter is None:
        max_iter = getattr(settings, "SPECTRA_FRECHET_MAX_ITER", 100)
    matrices = _stack(dataset)
    mean = matrices[medoid_index(matrices)]

    converged, iterations, aligned = False, 0, list(dataset)
    for iterations in range(1, max_iter + 1):
        current = Network(id="frechet-mean", adjacency=mean)

        def align(net):
            return best_permutation_alignment(current, net).apply(net.adjacency)

        if parallel:
            workers = getattr(settings, "SPECTRA_MAX_WORKERS", 4)
            with futures.ThreadPoolExecutor(max_workers=workers) as executor:
                stacked = list(executor.map(align, dataset))
        else:
            stacked = [align(net) for net in dataset]
        aligned = [
            Network(id=net.id, adjacency=matrix) for net, matrix in zip(dataset, stacked)
        ]
        updated = np.mean(stacked, axis=0)
        shift = float(np.linalg.norm(updated - mean))
        mean = updated
        if shift < tol:
            converged = True
            break

    if not converged:
        logger.warning(f"Frechet mean did not converge in {max_iter} iterations")
    else:
        logger.info(f"Frechet mean converged in {iterations} iterations")
    return FrechetMeanResult(
        mean=Network(id="frechet-mean", adjacency=mean),
        aligned=tuple(aligned),
        iterations=iterations,
        converged=converged,
    )
