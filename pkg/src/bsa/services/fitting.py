# bsa/services/fitting.py
import logging
from concurrent import futures
from dataclasses import replace
from itertools import combinations, islice
from math import comb

import numpy as np
from django.conf import settings

from barycentric.services.subspace import compute_halfspaces, project, project_convex
from bsa.domain import (
    SEARCH_GREEDY_BACKWARD,
    BackwardPath,
    BackwardStep,
    BSAResult,
)
from bsa.exceptions import BudgetExceeded, InvalidConfig
from spectral.exceptions import SizeMismatch
from spectral.services.geometry import pairwise_spectral_distances
from spectral.services.networks import spectrum

logger = logging.getLogger(__name__)

BATCH_SIZE = 1024


def dataset_spectra(dataset):
    """Спектры всех сетей выборки; сети должны быть одного размера."""
    if not dataset:
        raise InvalidConfig("Пустая выборка")
    sizes = sorted({net.n for net in dataset})
    if len(sizes) > 1:
        raise SizeMismatch(f"Сети выборки разного размера: {sizes}")
    return [spectrum(net) for net in dataset]


def _projector(convex):
    return project_convex if convex else project


def fit_subset(spectra, indices, convex=False):
    """
    Проецирует все спектры выборки на подпространство заданных опор.

    Returns:
        BSAResult: веса, проекции и ошибки для набора опор indices
    """
    indices = tuple(sorted(indices))
    subspace = compute_halfspaces([spectra[i] for i in indices])
    projector = _projector(convex)
    projections = [projector(subspace, s) for s in spectra]
    errors = np.array([p.squared_error for p in projections])
    return BSAResult(
        ref_indices=indices,
        weights=np.vstack([p.coords.weights for p in projections]),
        projections=tuple(p.point for p in projections),
        per_datum_sq_error=errors,
        mse=float(errors.mean()),
        subspace=subspace,
        convex=convex,
    )


def subset_mse(spectra, indices, convex=False):
    subspace = compute_halfspaces([spectra[i] for i in indices])
    projector = _projector(convex)
    return float(np.mean([projector(subspace, s).squared_error for s in spectra]))


def _evaluate(spectra, subsets, config):
    """Ошибки для последовательности наборов в исходном порядке."""
    if not config.parallel:
        return [subset_mse(spectra, subset, config.convex) for subset in subsets]
    workers = getattr(settings, "SPECTRA_MAX_WORKERS", 4)
    with futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(
            executor.map(
                lambda subset: subset_mse(spectra, subset, config.convex), subsets
            )
        )


def _admissible(config, distances):
    def check(subset):
        if config.distinct_labels:
            labels = [config.labels[i] for i in subset]
            if len(set(labels)) != len(labels):
                return False
        if config.min_ref_separation > 0:
            block = distances[np.ix_(subset, subset)]
            off_diagonal = block[~np.eye(len(subset), dtype=bool)]
            if np.any(off_diagonal < config.min_ref_separation):
                return False
        return True

    return check


def _exhaustive_best(spectra, config):
    size = len(spectra)
    total = comb(size, config.num_refs)
    budget = getattr(settings, "SPECTRA_SUBSET_BUDGET", 1_000_000)
    if total > budget:
        raise BudgetExceeded(
            f"Полный перебор C({size}, {config.num_refs}) = {total} "
            f"превышает бюджет {budget}"
        )

    distances = None
    if config.min_ref_separation > 0:
        distances = pairwise_spectral_distances([s.values for s in spectra])
    candidates = filter(
        _admissible(config, distances), combinations(range(size), config.num_refs)
    )
    logger.info(
        f"Exhaustive {config.variant} BSA over {total} subsets "
        f"(N={size}, m={config.num_refs})"
    )

    best_subset, best_mse = None, np.inf
    while batch := list(islice(candidates, BATCH_SIZE)):
        for subset, mse in zip(batch, _evaluate(spectra, batch, config)):
            # Строгое сравнение: при равенстве остаётся лексикографически первый
            if mse < best_mse:
                best_subset, best_mse = subset, mse
    if best_subset is None:
        raise InvalidConfig("Ни один набор опор не удовлетворяет ограничениям")
    return best_subset


def _backward_steps(spectra, start, config):
    current = tuple(start)
    mse = subset_mse(spectra, current, config.convex)
    steps = [BackwardStep(ref_indices=current, mse=mse)]
    while len(current) > 1:
        candidates = [current[:k] + current[k + 1 :] for k in range(len(current))]
        errors = _evaluate(spectra, candidates, config)
        best = int(np.argmin(errors))
        current = candidates[best]
        steps.append(BackwardStep(ref_indices=current, mse=errors[best]))
        logger.info(
            f"Backward step: dropped reference {steps[-2].ref_indices[best]}, "
            f"m={len(current)}, mse={errors[best]:.6e}"
        )
    return steps


def fit_backward(dataset, config):
    """
    Обратный выборочный анализ: вложенные подпространства с жадным удалением опор.

    Путь начинается с backward_start опор (по умолчанию вся выборка; при
    меньшем числе начальный набор находится полным перебором) и на каждом
    шаге удаляет опору, удаление которой меньше всего увеличивает ошибку.
    При равенстве удаляется опора с меньшим индексом.

    Args:
        dataset: список сетей одного размера
        config: BSAConfig; используются convex, parallel и backward_start

    Returns:
        BackwardPath: шаги (индексы опор, ошибка) до одной опоры

    Raises:
        SizeMismatch: если сети разного размера
        BudgetExceeded: если начальный набор требует слишком большого перебора
        SolverFailure: если квадратичная задача не решена
    """
    spectra = dataset_spectra(dataset)
    config.check_dataset_size(len(spectra))
    size = len(spectra)
    start = config.backward_start or size
    if start == size:
        initial = tuple(range(size))
    else:
        initial = _exhaustive_best(
            spectra,
            replace(
                config,
                num_refs=start,
                search="exhaustive",
                min_ref_separation=0.0,
                distinct_labels=False,
            ),
        )
    steps = _backward_steps(spectra, initial, config)
    return BackwardPath(steps=tuple(steps), convex=config.convex)


def fit(dataset, config):
    """
    Выборочный барицентрический анализ.

    Ищет m опорных сетей выборки, минимизирующих среднюю квадратичную ошибку
    проекции спектров всех сетей на их барицентрическое подпространство.
    Полный перебор идёт по наборам в лексикографическом порядке и при
    равенстве ошибок возвращает первый набор; результат не зависит от
    числа потоков.

    Args:
        dataset: список сетей одного размера
        config: BSAConfig

    Returns:
        BSAResult: лучший набор опор с весами и проекциями

    Raises:
        InvalidConfig: если m больше размера выборки
        BudgetExceeded: если C(N, m) превышает SPECTRA_SUBSET_BUDGET
        SizeMismatch: если сети разного размера
        SolverFailure: если квадратичная задача не решена
    """
    spectra = dataset_spectra(dataset)
    config.check_dataset_size(len(spectra))

    if config.search == SEARCH_GREEDY_BACKWARD:
        path = fit_backward(dataset, replace(config, backward_start=None))
        indices = path.step_for(config.num_refs).ref_indices
    else:
        indices = _exhaustive_best(spectra, config)

    result = fit_subset(spectra, indices, config.convex)
    logger.info(
        f"{config.variant.capitalize()} BSA selected {list(result.ref_indices)}, "
        f"mse={result.mse:.6e}"
    )
    return result
