# barycentric/services/subspace.py
import logging

import numpy as np
from django.conf import settings
from scipy.linalg import pinv

from barycentric.domain import BarycentricCoordinates, BarycentricSubspace, Projection
from barycentric.exceptions import InconsistentSystem
from barycentric.services.qp import kkt_residual as qp_kkt_residual
from barycentric.services.qp import solve_qp
from spectral.domain import Spectrum
from spectral.exceptions import SizeMismatch

logger = logging.getLogger(__name__)

PINV_RTOL = 1e-10


def stack_spectra(refs):
    if not refs:
        raise ValueError("Нужен хотя бы один опорный спектр")
    sizes = {ref.n for ref in refs}
    if len(sizes) > 1:
        raise SizeMismatch(f"Опорные спектры разного размера: {sorted(sizes)}")
    return np.vstack([ref.values for ref in refs])


def compute_halfspaces(refs):
    """
    Строит барицентрическое подпространство как многогранник.

    Для каждого 1 <= r <= n-1 пара (alpha_r, beta_r) является решением
    минимальной нормы системы [λ(A_i), 1] [alpha_r; -beta_r] = θ_r, где θ_r
    содержит спектральные зазоры λ_{r+1}(A_i) - λ_r(A_i) опорных сетей.

    Args:
        refs: список из m >= 1 спектров общей длины n >= 2

    Returns:
        BarycentricSubspace: опорные спектры и n-1 полупространств

    Raises:
        SizeMismatch: если спектры разной длины
        InconsistentSystem: если θ_r не лежит в образе системы (вырожденные опоры)
    """
    stacked = stack_spectra(refs)
    m, n = stacked.shape
    if n < 2:
        raise ValueError("Полупространства определены только при n >= 2")

    system = np.hstack([stacked, np.ones((m, 1))])
    gaps = np.diff(stacked, axis=1)
    # Система всегда совместна: alpha_r = e_{r+1} - e_r, beta_r = 0
    solution = pinv(system, rtol=PINV_RTOL) @ gaps

    tol = getattr(settings, "SPECTRA_HALFSPACE_RESIDUAL", 1e-8)
    residuals = np.linalg.norm(system @ solution - gaps, axis=0)
    limits = tol * np.maximum(1.0, np.linalg.norm(gaps, axis=0))
    if np.any(residuals > limits):
        worst = int(np.argmax(residuals / limits))
        raise InconsistentSystem(
            f"Зазор r={worst + 1} не лежит в образе системы "
            f"(невязка {residuals[worst]:.3e})"
        )

    degenerate = np.flatnonzero(np.all(gaps == 0.0, axis=0))
    if degenerate.size:
        logger.info(
            f"Eigenvalues {list(degenerate + 1)} coincide for all references; "
            "emitting trivial half-spaces"
        )

    return BarycentricSubspace(
        refs=tuple(refs), alphas=solution[:n].T, betas=-solution[n]
    )


def affine_dimension(refs, tol=1e-9):
    """Размерность аффинной оболочки опорных спектров."""
    stacked = stack_spectra(refs)
    if stacked.shape[0] == 1:
        return 0
    differences = stacked[1:] - stacked[0]
    scale = max(1.0, float(np.abs(stacked).max()))
    return int(np.linalg.matrix_rank(differences, tol=tol * scale))


def _affine_system(bs):
    return np.vstack([bs.reference_matrix, np.ones((1, bs.m))])


def contains(bs, s, tol=None):
    """
    Проверяет, лежит ли спектр в барицентрическом подпространстве.

    Точка должна лежать в аффинной оболочке опорных спектров (невязка
    наименьших квадратов не выше tol) и удовлетворять всем полупространствам.
    Кроме Spectrum принимается произвольная точка R^n, в том числе
    неупорядоченная.
    """
    if tol is None:
        tol = getattr(settings, "SPECTRA_CONTAINS_TOL", 1e-9)
    values = s.values if isinstance(s, Spectrum) else np.asarray(s, dtype=float)
    if values.shape != (bs.n,):
        raise SizeMismatch(f"Размеры не совпадают: {values.size} и {bs.n}")

    system = _affine_system(bs)
    target = np.append(values, 1.0)
    weights = np.linalg.lstsq(system, target, rcond=None)[0]
    residual = np.linalg.norm(system @ weights - target)
    if residual > tol * max(1.0, float(np.abs(values).max())):
        return False
    return bool(np.all(bs.alphas @ values >= bs.betas - tol))


def _problem(bs, s, convex):
    refs = bs.reference_matrix
    hessian = refs.T @ refs
    linear = -refs.T @ s.values
    eq_matrix = np.ones((1, bs.m))
    eq_rhs = np.ones(1)
    if convex:
        ineq_matrix = np.eye(bs.m)
        ineq_rhs = np.zeros(bs.m)
    else:
        ineq_matrix = np.diff(refs, axis=0)
        ineq_rhs = np.zeros(bs.n - 1)
    return hessian, linear, eq_matrix, eq_rhs, ineq_matrix, ineq_rhs


def _minimum_norm_weights(bs, weights, convex):
    """Среди весов, дающих ту же точку, выбирает вектор минимальной нормы."""
    system = _affine_system(bs)
    if np.linalg.matrix_rank(system) == bs.m:
        return weights
    target = system @ weights
    if not convex:
        return np.linalg.lstsq(system, target, rcond=None)[0]
    solution = solve_qp(
        hessian=np.eye(bs.m),
        linear=np.zeros(bs.m),
        eq_matrix=system,
        eq_rhs=target,
        ineq_matrix=np.eye(bs.m),
        ineq_rhs=np.zeros(bs.m),
        start=weights,
    )
    return solution.x


def _project(bs, s, convex):
    if s.n != bs.n:
        raise SizeMismatch(f"Размеры не совпадают: {s.n} и {bs.n}")
    problem = _problem(bs, s, convex)
    start = np.zeros(bs.m)
    start[0] = 1.0
    solution = solve_qp(*problem, start=start)

    weights = _minimum_norm_weights(bs, solution.x, convex)
    point = bs.reference_matrix @ weights
    residual = s.values - point
    return Projection(
        coords=BarycentricCoordinates(weights=weights),
        point=Spectrum(values=point),
        squared_error=float(residual @ residual),
    )


def project(bs, s):
    """
    Проекция спектра на барицентрическое подпространство.

    Минимизирует ||s - sum_j w_j λ(A_j)||^2 при sum w = 1 и упорядоченной
    комбинации. Точка проекции единственна; при аффинно зависимых опорах
    возвращаются веса минимальной нормы.

    Raises:
        SizeMismatch: если длина спектра не равна n
        SolverFailure: если квадратичная задача не решена
    """
    return _project(bs, s, convex=False)


def project_convex(bs, s):
    """Проекция на выпуклую оболочку опорных спектров (веса неотрицательны)."""
    return _project(bs, s, convex=True)


def kkt_residual(bs, s, projection, convex=False):
    """Невязка условий оптимальности для найденной проекции."""
    problem = _problem(bs, s, convex)
    return qp_kkt_residual(*problem, projection.coords.weights)
