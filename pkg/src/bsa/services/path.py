# bsa/services/path.py
import numpy as np
from django.conf import settings


def mse_ratios(path, floor=None):
    """
    Отношения mse(d-1) / mse(d) между соседними размерностями обратного пути.

    Шаги, где mse(d) не выше floor, пропускаются: там ошибка численно равна нулю.

    Returns:
        dict: размерность d -> отношение при переходе от d к d-1
    """
    if floor is None:
        floor = getattr(settings, "SPECTRA_RATIO_FLOOR", 1e-10)
    ratios = {}
    for upper, lower in zip(path.steps, path.steps[1:]):
        if upper.mse <= floor:
            continue
        ratios[upper.dimension] = lower.mse / upper.mse
    return ratios


def elbow_dimension(path, floor=None):
    """Размерность, после которой ошибка растёт сильнее всего (наибольшее отношение)."""
    ratios = mse_ratios(path, floor)
    if not ratios:
        return None
    dimensions = list(ratios)
    return dimensions[int(np.argmax([ratios[d] for d in dimensions]))]
