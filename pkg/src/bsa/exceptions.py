# bsa/exceptions.py
from common.exceptions import SpectraError


class BudgetExceeded(SpectraError):
    """Исключение: число подмножеств для полного перебора превышает бюджет"""

    pass


class DegenerateDataset(SpectraError):
    """Исключение: полная дисперсия выборки равна нулю"""

    pass


class InvalidConfig(SpectraError, ValueError):
    """Исключение: недопустимые параметры анализа"""

    pass
