# common/exceptions.py


class SpectraError(Exception):
    """Базовое исключение для всех ошибок анализа спектров"""

    pass


class ReportError(SpectraError):
    """Исключение: отчёт не прошёл проверку схемы"""

    pass
