# barycentric/services/polygon.py
from itertools import combinations

import numpy as np

from barycentric.domain import Polygon2D
from barycentric.exceptions import DegenerateTriangle, SingularSystem
from barycentric.services.subspace import stack_spectra
from spectral.services.geometry import spectrum_distance

FEASIBILITY_TOL = 1e-9


def _triangle(refs):
    d01 = spectrum_distance(refs[0], refs[1])
    d02 = spectrum_distance(refs[0], refs[2])
    d12 = spectrum_distance(refs[1], refs[2])
    longest = max(d01, d02, d12)
    if min(d01, d02, d12) <= FEASIBILITY_TOL * max(1.0, longest):
        raise DegenerateTriangle("Опорные спектры должны быть попарно различны")

    x = (d01**2 + d02**2 - d12**2) / (2 * d01)
    height_sq = d02**2 - x**2
    if height_sq <= (FEASIBILITY_TOL * max(1.0, longest)) ** 2:
        raise DegenerateTriangle("Опорные спектры лежат на одной прямой")
    return np.array([[0.0, 0.0], [d01, 0.0], [x, np.sqrt(height_sq)]])


def _is_unbounded(alphas):
    """Есть ли ненулевое направление d с alpha_r . d >= 0 для всех r."""
    significant = [a for a in alphas if np.linalg.norm(a) > FEASIBILITY_TOL]
    if not significant:
        return True
    for alpha in significant:
        normal = np.array([-alpha[1], alpha[0]]) / np.linalg.norm(alpha)
        for direction in (normal, -normal):
            if np.all(alphas @ direction >= -FEASIBILITY_TOL):
                return True
    return False


def _vertices(alphas, betas, center):
    scale = max(1.0, float(np.abs(betas).max(initial=0.0)))
    lines = [
        r for r in range(len(alphas)) if np.linalg.norm(alphas[r]) > FEASIBILITY_TOL
    ]
    found = []
    for r, q in combinations(lines, 2):
        matrix = np.vstack([alphas[r], alphas[q]])
        if abs(np.linalg.det(matrix)) <= FEASIBILITY_TOL:
            continue
        point = np.linalg.solve(matrix, [betas[r], betas[q]])
        if np.any(alphas @ point < betas - FEASIBILITY_TOL * scale):
            continue
        if any(np.linalg.norm(point - other) <= FEASIBILITY_TOL * scale for other in found):
            continue
        found.append(point)
    if not found:
        return np.empty((0, 2))
    found = np.array(found)
    angles = np.arctan2(found[:, 1] - center[1], found[:, 0] - center[0])
    return found[np.argsort(angles, kind="stable")]


def embed_polygon_2d(refs):
    """
    Изометрично укладывает барицентрическое подпространство трёх опор на плоскость.

    Опорные точки a_0, a_1, a_2 выбираются так, что попарные расстояния на
    плоскости равны спектральным. Для каждого r коэффициенты полуплоскости
    alpha_r . (x, y) >= beta_r находятся из системы 3x3, вершины многоугольника
    являются допустимыми пересечениями граничных прямых.

    Raises:
        DegenerateTriangle: если спектры совпадают или лежат на одной прямой
        SingularSystem: если система 3x3 вырождена
    """
    if len(refs) != 3:
        raise ValueError("Плоская укладка определена ровно для трёх опор")
    stacked = stack_spectra(refs)
    points = _triangle(refs)

    system = np.hstack([points, np.ones((3, 1))])
    if np.linalg.cond(system) > 1e12:
        raise SingularSystem("Система 3x3 для полуплоскостей вырождена")
    try:
        solution = np.linalg.solve(system, np.diff(stacked, axis=1))
    except np.linalg.LinAlgError as e:
        raise SingularSystem(f"Система 3x3 для полуплоскостей вырождена: {e}")

    alphas = solution[:2].T
    betas = -solution[2]
    center = points.mean(axis=0)
    return Polygon2D(
        vertices_2d=_vertices(alphas, betas, center),
        ref_points_2d=points,
        closed=not _is_unbounded(alphas),
        halfplane_alphas=alphas,
        halfplane_betas=betas,
    )


def embed_points_2d(polygon, weights):
    """Плоские координаты точек по их барицентрическим весам."""
    return np.asarray(weights, dtype=float) @ polygon.ref_points_2d
