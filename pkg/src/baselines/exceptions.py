# baselines/exceptions.py
from common.exceptions import SpectraError


class TooLarge(SpectraError):
    """Исключение: полный перебор перестановок слишком велик"""

    pass


class IndexOutOfRange(SpectraError, IndexError):
    """Исключение: номер компоненты вне диапазона"""

    pass
