# network_datasets/exceptions.py
from common.exceptions import SpectraError


class ParseError(SpectraError):
    """Исключение: некорректная строка во входном файле"""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"Строка {line}: {message}")
        self.line = line


class EmptySelection(SpectraError):
    """Исключение: ни одна сеть не попала в выборку"""

    pass


class SchemaError(SpectraError):
    """Исключение: файл выборки не соответствует схеме"""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class DatasetIoError(SpectraError):
    """Исключение: ошибка чтения или записи файла выборки"""

    pass
