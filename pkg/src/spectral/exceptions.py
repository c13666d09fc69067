# spectral/exceptions.py
from common.exceptions import SpectraError


class NonSquare(SpectraError):
    """Исключение: матрица смежности не квадратная"""

    pass


class NonSymmetric(SpectraError):
    """Исключение: асимметрия матрицы выше допуска"""

    pass


class NonFinite(SpectraError):
    """Исключение: в матрице есть NaN или бесконечность"""

    pass


class SizeMismatch(SpectraError):
    """Исключение: сети или спектры разного размера"""

    pass


class EigensolverFailure(SpectraError):
    """Исключение: симметричный собственный решатель не сошёлся"""

    pass


class LeftCone(SpectraError):
    """Исключение: точка вышла из конуса упорядоченных спектров"""

    pass
