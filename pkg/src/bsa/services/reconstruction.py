# bsa/services/reconstruction.py
import numpy as np

from bsa.exceptions import DegenerateDataset
from spectral.domain import Network
from spectral.exceptions import SizeMismatch
from spectral.services.networks import eigendecompose, spectra_matrix


def reconstruct(datum, proj):
    """
    Восстанавливает сеть по проекции её спектра.

    Спектр проекции сопрягается ортогональной матрицей собственного
    разложения исходной сети, поэтому ошибка восстановления по Фробениусу
    равна ошибке проекции. У восстановленной сети могут появиться петли.

    Args:
        datum: исходная сеть
        proj: проекция её спектра

    Returns:
        Network: сеть R diag(proj.point) R^T с тем же идентификатором

    Raises:
        SizeMismatch: если длина спектра проекции не равна числу узлов
        EigensolverFailure: если разложение не удалось
    """
    if proj.point.n != datum.n:
        raise SizeMismatch(
            f"Проекция длины {proj.point.n} для сети из {datum.n} узлов"
        )
    decomposition = eigendecompose(datum)
    adjacency = decomposition.reconstruct(proj.point.values)
    return Network(id=datum.id, adjacency=(adjacency + adjacency.T) / 2)


def variance_explained(dataset, result):
    """
    Доля полной спектральной дисперсии выборки, объяснённая подпространством.

    Полная дисперсия считается относительно спектрального среднего выборки;
    результат обрезается до отрезка [0, 1].

    Raises:
        DegenerateDataset: если все спектры совпадают
    """
    if not dataset:
        raise DegenerateDataset("Пустая выборка")
    spectra = spectra_matrix(dataset)
    mean = spectra.mean(axis=0)
    total = float(np.sum((spectra - mean) ** 2))
    if total <= np.finfo(float).eps * max(1.0, float(np.sum(mean**2))):
        raise DegenerateDataset("Полная дисперсия выборки равна нулю")
    explained = 1.0 - float(np.sum(result.per_datum_sq_error)) / total
    return float(np.clip(explained, 0.0, 1.0))
