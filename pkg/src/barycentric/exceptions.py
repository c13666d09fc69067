# barycentric/exceptions.py
from common.exceptions import SpectraError


class InconsistentSystem(SpectraError):
    """Исключение: система для полупространств не имеет решения"""

    pass


class SolverFailure(SpectraError):
    """Исключение: квадратичная задача не решена за отведённое число итераций"""

    pass


class DegenerateTriangle(SpectraError):
    """Исключение: три спектра не задают двумерную аффинную оболочку"""

    pass


class SingularSystem(SpectraError):
    """Исключение: вырожденная система 3x3 для плоского многоугольника"""

    pass
