# spectral/services/networks.py
import numpy as np
import scipy.linalg
from django.conf import settings

from spectral.domain import EigenDecomposition, Network, Spectrum
from spectral.exceptions import (
    EigensolverFailure,
    NonFinite,
    NonSquare,
    NonSymmetric,
    SizeMismatch,
)


def validate_network(raw, network_id="network", tol=None):
    """
    Проверяет матрицу смежности и собирает из неё сеть.

    Асимметрия ниже допуска (относительно максимального элемента) считается
    шумом и убирается симметризацией (A + A^T) / 2.

    Args:
        raw: квадратная матрица (массив или вложенные списки)
        network_id: идентификатор сети
        tol: относительный допуск асимметрии; по умолчанию SPECTRA_SYMMETRY_TOL

    Returns:
        Network: проверенная симметричная сеть

    Raises:
        NonSquare: если матрица не квадратная или пустая
        NonFinite: если есть NaN или бесконечности
        NonSymmetric: если асимметрия выше допуска
    """
    if tol is None:
        tol = getattr(settings, "SPECTRA_SYMMETRY_TOL", 1e-12)
    try:
        matrix = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as e:
        raise NonSquare(f"Сеть {network_id}: матрица не прямоугольная ({e})")

    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
        raise NonSquare(f"Сеть {network_id}: ожидалась квадратная матрица")
    if not np.all(np.isfinite(matrix)):
        raise NonFinite(f"Сеть {network_id}: матрица содержит NaN или inf")

    asymmetry = float(np.abs(matrix - matrix.T).max())
    scale = float(np.abs(matrix).max())
    if asymmetry > tol * scale:
        raise NonSymmetric(
            f"Сеть {network_id}: асимметрия {asymmetry:.3e} выше допуска"
        )
    return Network(id=network_id, adjacency=(matrix + matrix.T) / 2)


def _eigh(matrix, eigvals_only):
    try:
        return scipy.linalg.eigh(matrix, eigvals_only=eigvals_only)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise EigensolverFailure(f"Собственный решатель не сошёлся: {e}")


def spectrum(net):
    """Спектр сети по возрастанию, с учётом кратностей."""
    values = _eigh(net.adjacency, eigvals_only=True)
    return Spectrum(values=np.sort(values))


def eigendecompose(net):
    """
    Спектральное разложение X = Q diag(λ) Q^T с λ по возрастанию.

    При кратных собственных значениях годится любой ортонормированный базис
    собственного подпространства.
    """
    values, basis = _eigh(net.adjacency, eigvals_only=False)
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(
        spectrum=Spectrum(values=values[order]), basis=basis[:, order]
    )


def check_same_size(a, b):
    if a.n != b.n:
        raise SizeMismatch(f"Размеры не совпадают: {a.n} и {b.n}")


def align(a, b):
    """
    Ортогональная матрица R = Q_a Q_b^T, совмещающая b с a.

    Невязка ||R b R^T - a||_F равна спектральному расстоянию между сетями.

    Raises:
        SizeMismatch: если сети разного размера
        EigensolverFailure: если разложение не удалось
    """
    check_same_size(a, b)
    return eigendecompose(a).basis @ eigendecompose(b).basis.T


def spectra_matrix(networks):
    """Спектры выборки построчно: массив N x n."""
    if not networks:
        return np.empty((0, 0))
    sizes = {net.n for net in networks}
    if len(sizes) > 1:
        raise SizeMismatch(f"Сети выборки разного размера: {sorted(sizes)}")
    return np.vstack([spectrum(net).values for net in networks])
