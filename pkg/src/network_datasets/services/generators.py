# network_datasets/services/generators.py
import logging

import numpy as np
from django.conf import settings

from network_datasets.domain import Dataset
from spectral.domain import Network

logger = logging.getLogger(__name__)

TWO_PARAMETER_NODES = 6
TREE_EDGES = ((0, 2), (1, 2), (3, 4), (3, 5))
CENTRAL_EDGE = (2, 3)
EIGHT_EDGES = ((0, 1), (4, 5))
HOURGLASS_EDGES = ((0, 3), (2, 4))

CLUSTERED_NODES = 10
TEMPLATES = ("star", "meshed-star", "complete")


def _add_edges(matrix, edges, weight):
    for i, j in edges:
        matrix[i, j] = matrix[j, i] = weight


def topology(t):
    if t < 0:
        return "eight"
    if t > 0:
        return "hourglass"
    return "tree"


def two_parameter_adjacency(s, t):
    """
    Сеть X(s, t) на шести узлах.

    Дерево из пяти рёбер с центральным ребром веса s. При t < 0 добавляются
    два ребра веса |t|, замыкающие концевые треугольники ("восьмёрка"),
    при t > 0 - два ребра, образующие треугольники на центральном ребре
    ("песочные часы").
    """
    matrix = np.zeros((TWO_PARAMETER_NODES, TWO_PARAMETER_NODES))
    _add_edges(matrix, TREE_EDGES, 1.0)
    _add_edges(matrix, (CENTRAL_EDGE,), s)
    if t < 0:
        _add_edges(matrix, EIGHT_EDGES, abs(t))
    elif t > 0:
        _add_edges(matrix, HOURGLASS_EDGES, abs(t))
    return matrix


def generate_two_parameter(num, seed):
    """
    Выборка двухпараметрических сетей: s ~ U[1/2, 3/2], t ~ U[-1/2, 1/2].

    Метка каждой сети хранит топологию и значения параметров.
    """
    if num < 1:
        raise ValueError("Размер выборки должен быть положительным")
    rng = np.random.default_rng(seed)
    s_values = rng.uniform(0.5, 1.5, size=num)
    t_values = rng.uniform(-0.5, 0.5, size=num)

    networks, labels = [], []
    for k, (s, t) in enumerate(zip(s_values, t_values)):
        networks.append(
            Network(id=f"x{k}", adjacency=two_parameter_adjacency(s, t))
        )
        labels.append(f"{topology(t)}(s={s:.4f}, t={t:.4f})")

    logger.info(f"Generated {num} two-parameter networks (seed={seed})")
    return Dataset(
        networks=networks,
        labels=labels,
        meta={"generator": "two-parameter", "seed": seed, "num": num},
    )


def template_adjacency(name, n=CLUSTERED_NODES):
    """Шаблоны кластеров: звезда, звезда с двумя связанными центрами, полная сеть."""
    matrix = np.zeros((n, n))
    if name == "star":
        matrix[0, 1:] = matrix[1:, 0] = 1.0
    elif name == "meshed-star":
        matrix[:2, 2:] = 1.0
        matrix[2:, :2] = 1.0
        matrix[0, 1] = matrix[1, 0] = 1.0
    elif name == "complete":
        matrix = 0.5 * (np.ones((n, n)) - np.eye(n))
    else:
        raise ValueError(f"Неизвестный шаблон: {name}")
    return matrix


def generate_clustered(per_cluster, sigma=None, seed=0):
    """
    Кластеризованная выборка из трёх шаблонов с гауссовым шумом.

    К весу каждого ребра между различными узлами добавляется N(0, sigma),
    затем берётся модуль; диагональ остаётся нулевой.

    Args:
        per_cluster: число сетей в каждом кластере
        sigma: стандартное отклонение шума; по умолчанию SPECTRA_DEFAULT_SIGMA
        seed: зерно генератора

    Returns:
        Dataset: 3 * per_cluster сетей на 10 узлах, метки - имена шаблонов
    """
    if sigma is None:
        sigma = getattr(settings, "SPECTRA_DEFAULT_SIGMA", 0.05)
    if per_cluster < 1:
        raise ValueError("В каждом кластере должна быть хотя бы одна сеть")
    if sigma < 0:
        raise ValueError("Стандартное отклонение шума отрицательно")

    rng = np.random.default_rng(seed)
    upper = np.triu(np.ones((CLUSTERED_NODES, CLUSTERED_NODES), dtype=bool), k=1)
    networks, labels = [], []
    for name in TEMPLATES:
        template = template_adjacency(name)
        for k in range(per_cluster):
            noise = np.zeros_like(template)
            noise[upper] = rng.normal(0.0, sigma, size=int(upper.sum()))
            networks.append(
                Network(id=f"{name}-{k}", adjacency=np.abs(template + noise + noise.T))
            )
            labels.append(name)

    logger.info(
        f"Generated {len(networks)} clustered networks "
        f"(per_cluster={per_cluster}, sigma={sigma}, seed={seed})"
    )
    return Dataset(
        networks=networks,
        labels=labels,
        meta={
            "generator": "clustered",
            "seed": seed,
            "per_cluster": per_cluster,
            "sigma": sigma,
        },
    )
