# barycentric/services/qp.py
import logging
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from scipy.linalg import null_space, pinvh
from scipy.optimize import lsq_linear

from barycentric.exceptions import SolverFailure

logger = logging.getLogger(__name__)

RANK_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class QPSolution:
    x: np.ndarray
    working_set: tuple[int, ...]
    iterations: int


def _independent_rows(matrix, rhs):
    """Равносильная система с ортонормированными линейно независимыми строками."""
    if matrix.shape[0] == 0:
        return matrix, rhs
    left, sigma, right = np.linalg.svd(matrix, full_matrices=False)
    rank = int(np.sum(sigma > RANK_RTOL * max(1.0, float(sigma[0]))))
    return right[:rank], (left[:, :rank].T @ rhs) / sigma[:rank]


def _null_basis(constraints, size):
    if constraints.shape[0] == 0:
        return np.eye(size)
    return null_space(constraints, rcond=RANK_RTOL)


def _bounded_multipliers_fit(constraints, gradient, eq_count):
    """Невязка grad = C^T lambda при lambda >= 0 для строк-неравенств."""
    lower = np.concatenate(
        [np.full(eq_count, -np.inf), np.zeros(constraints.shape[0] - eq_count)]
    )
    upper = np.full(constraints.shape[0], np.inf)
    fit = lsq_linear(constraints.T, gradient, bounds=(lower, upper), method="bvls")
    return float(np.linalg.norm(constraints.T @ fit.x - gradient))


def solve_qp(
    hessian,
    linear,
    eq_matrix,
    eq_rhs,
    ineq_matrix,
    ineq_rhs,
    start,
    max_iter=None,
    tol=None,
):
    """
    Прямой метод активного множества для выпуклой квадратичной задачи

        min 1/2 x^T H x + c^T x  при  A x = b,  G x >= h

    из допустимой стартовой точки. Шаги ищутся в ортонормированном базисе
    ядра рабочих ограничений, а приведённый гессиан обращается
    псевдообратной, поэтому H может быть вырожденной (опор больше, чем
    размерность их аффинной оболочки плюс один). Точка считается
    стационарной на грани, когда приведённый градиент не превышает
    tol * масштаб задачи.

    Args:
        hessian: матрица H (k x k), симметричная неотрицательно определённая
        linear: вектор c
        eq_matrix, eq_rhs: ограничения-равенства A, b (строки могут быть зависимы)
        ineq_matrix, ineq_rhs: ограничения-неравенства G, h
        start: допустимая стартовая точка
        max_iter: бюджет итераций; по умолчанию SPECTRA_QP_MAX_ITER
        tol: относительный допуск; по умолчанию SPECTRA_QP_TOL

    Returns:
        QPSolution: решение, рабочее множество и число итераций

    Raises:
        SolverFailure: если бюджет итераций исчерпан
    """
    if max_iter is None:
        max_iter = getattr(settings, "SPECTRA_QP_MAX_ITER", 10_000)
    if tol is None:
        tol = getattr(settings, "SPECTRA_QP_TOL", 1e-12)

    hessian = np.asarray(hessian, dtype=float)
    hessian = (hessian + hessian.T) / 2
    linear = np.asarray(linear, dtype=float)
    eq_matrix = np.atleast_2d(np.asarray(eq_matrix, dtype=float))
    ineq_matrix = np.atleast_2d(np.asarray(ineq_matrix, dtype=float))
    eq_rhs = np.atleast_1d(np.asarray(eq_rhs, dtype=float))
    ineq_rhs = np.atleast_1d(np.asarray(ineq_rhs, dtype=float))
    eq_matrix, eq_rhs = _independent_rows(eq_matrix, eq_rhs)

    x = np.array(start, dtype=float)
    size = x.size
    eq_count = eq_matrix.shape[0]
    scale = max(1.0, float(np.abs(hessian).max()), float(np.abs(linear).max()))
    row_norms = np.linalg.norm(ineq_matrix, axis=1)
    working: list[int] = []

    for iteration in range(1, max_iter + 1):
        constraints = np.vstack([eq_matrix, ineq_matrix[working]])
        basis = _null_basis(constraints, size)
        gradient = hessian @ x + linear
        reduced_gradient = basis.T @ gradient
        x_scale = max(1.0, float(np.linalg.norm(x)))
        limit = tol * scale * x_scale

        step = np.zeros(size)
        if basis.shape[1] and np.linalg.norm(reduced_gradient) > limit:
            reduced_hessian = basis.T @ hessian @ basis
            inverse = pinvh(reduced_hessian, rtol=RANK_RTOL)
            step = basis @ (inverse @ -reduced_gradient)

        if np.linalg.norm(step) <= tol * x_scale:
            if not working:
                return QPSolution(x=x, working_set=(), iterations=iteration)
            solution = np.linalg.lstsq(constraints.T, gradient, rcond=None)[0]
            multipliers = solution[eq_count:]
            if multipliers.min() >= -tol * scale:
                return QPSolution(x=x, working_set=tuple(working), iterations=iteration)
            # Зависимые рабочие строки: множители не единственны
            if _bounded_multipliers_fit(constraints, gradient, eq_count) <= limit:
                return QPSolution(x=x, working_set=tuple(working), iterations=iteration)
            working.pop(int(np.argmin(multipliers)))
            continue

        step_length = 1.0
        blocking = None
        step_norm = float(np.linalg.norm(step))
        for index in range(ineq_matrix.shape[0]):
            if index in working:
                continue
            direction = float(ineq_matrix[index] @ step)
            if direction >= -tol * row_norms[index] * step_norm:
                continue
            ratio = (ineq_rhs[index] - float(ineq_matrix[index] @ x)) / direction
            if ratio < step_length:
                step_length = max(ratio, 0.0)
                blocking = index

        x = x + step_length * step
        if blocking is not None:
            working.append(blocking)

    logger.warning(f"Active-set solver hit the iteration budget ({max_iter})")
    raise SolverFailure(f"Квадратичная задача не решена за {max_iter} итераций")


def kkt_residual(hessian, linear, eq_matrix, eq_rhs, ineq_matrix, ineq_rhs, x):
    """
    Невязка условий Каруша-Куна-Таккера в точке x.

    Множители подбираются задачей наименьших квадратов с ограничением
    lambda >= 0 для неравенств, активных в x. Возвращается максимум из
    невязки стационарности, нарушения ограничений и дополняющей нежёсткости.
    """
    hessian = np.asarray(hessian, dtype=float)
    eq_matrix = np.atleast_2d(np.asarray(eq_matrix, dtype=float))
    ineq_matrix = np.atleast_2d(np.asarray(ineq_matrix, dtype=float))
    x = np.asarray(x, dtype=float)

    gradient = hessian @ x + np.asarray(linear, dtype=float)
    eq_violation = np.abs(eq_matrix @ x - eq_rhs).max(initial=0.0)
    slack = ineq_matrix @ x - ineq_rhs
    ineq_violation = max(0.0, -float(slack.min(initial=0.0)))

    active = np.flatnonzero(slack <= 1e-9)
    constraints = np.vstack([eq_matrix, ineq_matrix[active]])
    if constraints.shape[0] == 0:
        return max(float(np.linalg.norm(gradient)), eq_violation, ineq_violation)

    lower = np.concatenate(
        [np.full(eq_matrix.shape[0], -np.inf), np.zeros(active.size)]
    )
    upper = np.full(constraints.shape[0], np.inf)
    fit = lsq_linear(constraints.T, gradient, bounds=(lower, upper), method="bvls")
    stationarity = float(np.linalg.norm(constraints.T @ fit.x - gradient))
    complementarity = float(
        np.abs(fit.x[eq_matrix.shape[0] :] * slack[active]).max(initial=0.0)
    )
    return max(stationarity, eq_violation, ineq_violation, complementarity)
