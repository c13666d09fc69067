# common/services/reports.py
import json
import logging
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np
import pandas as pd
from django.conf import settings

from barycentric.services.polygon import embed_points_2d
from baselines.services.tangent import component_deformation
from common.exceptions import ReportError
from common.serializers import ReportSerializer
from network_datasets.serializers import error_pointer, first_error_message

logger = logging.getLogger(__name__)


def tool_version():
    try:
        return version("spectral-bsa")
    except PackageNotFoundError:
        return getattr(settings, "SPECTRA_VERSION", "unknown")


def to_csv(frame):
    return frame.to_csv(index=False)


def weights_table(dataset, result):
    frame = pd.DataFrame(
        result.weights,
        columns=[f"w_{dataset[i].id}" for i in result.ref_indices],
    )
    frame.insert(0, "id", dataset.ids)
    frame.insert(1, "label", [dataset.label(k) for k in range(len(dataset))])
    frame["sq_error"] = result.per_datum_sq_error
    return frame


def mse_table(dataset, path):
    return pd.DataFrame(
        [
            {
                "dimension": step.dimension,
                "num_refs": step.num_refs,
                "mse": step.mse,
                "ref_ids": ";".join(dataset[i].id for i in step.ref_indices),
            }
            for step in path
        ]
    )


def projection_2d_table(dataset, result, polygon):
    """Плоские координаты данных и опор по их барицентрическим весам."""
    points = embed_points_2d(polygon, result.weights)
    frame = pd.DataFrame(points, columns=["x", "y"])
    frame.insert(0, "id", dataset.ids)
    frame.insert(1, "kind", "datum")
    refs = pd.DataFrame(polygon.ref_points_2d, columns=["x", "y"])
    refs.insert(0, "id", [dataset[i].id for i in result.ref_indices])
    refs.insert(1, "kind", "reference")
    return pd.concat([frame, refs], ignore_index=True)


def scores_table(dataset, result):
    frame = pd.DataFrame(
        result.scores,
        columns=[f"pc{k + 1}" for k in range(result.num_components)],
    )
    frame.insert(0, "id", dataset.ids)
    frame.insert(1, "label", [dataset.label(k) for k in range(len(dataset))])
    return frame


def explained_variance_table(result):
    ratios = result.explained_variance_ratio
    return pd.DataFrame(
        {
            "component": np.arange(1, len(ratios) + 1),
            "ratio": ratios,
            "cumulative": np.cumsum(ratios),
        }
    )


def deformation_table(result, t):
    """Рёбра сетей mean +- t V_c для всех компонент."""
    rows = []
    for component in range(result.num_components):
        for value in (-t, t):
            adjacency = component_deformation(result, component, value).adjacency
            i, j = np.triu_indices(adjacency.shape[0], k=1)
            rows.append(
                pd.DataFrame(
                    {
                        "component": component + 1,
                        "t": value,
                        "source": i,
                        "target": j,
                        "weight": adjacency[i, j],
                    }
                )
            )
    return pd.concat(rows, ignore_index=True)


def reference_points_table(ids, polygon):
    frame = pd.DataFrame(polygon.ref_points_2d, columns=["x", "y"])
    frame.insert(0, "id", ids)
    return frame


def vertices_table(polygon):
    frame = pd.DataFrame(polygon.vertices_2d, columns=["x", "y"])
    frame.insert(0, "order", np.arange(len(frame)))
    return frame


def halfplanes_table(polygon):
    return pd.DataFrame(
        {
            "r": np.arange(1, len(polygon.halfplane_betas) + 1),
            "alpha_x": polygon.halfplane_alphas[:, 0],
            "alpha_y": polygon.halfplane_alphas[:, 1],
            "beta": polygon.halfplane_betas,
        }
    )


def write_report(path, command, dataset, result, tables):
    """
    Проверяет и записывает JSON-отчёт.

    Args:
        path: файл отчёта
        command: имя команды
        dataset: исходная выборка (в отчёт попадают её метаданные)
        result: сериализованный результат
        tables: словарь имя -> DataFrame

    Raises:
        ReportError: если отчёт не соответствует схеме; файл не создаётся
    """
    serializer = ReportSerializer(
        data={
            "tool_version": tool_version(),
            "command": command,
            "dataset_meta": dict(dataset.meta),
            "result": result,
            "plot_tables": {name: to_csv(frame) for name, frame in tables.items()},
        }
    )
    if not serializer.is_valid():
        pointer = error_pointer(serializer.errors) or "/"
        raise ReportError(f"{pointer}: {first_error_message(serializer.errors)}")
    path = Path(path)
    with path.open("w", encoding="utf-8") as f:
        json.dump(serializer.validated_data, f, ensure_ascii=False, indent=1)
    logger.info(f"Report written to {path}")
    return serializer.validated_data
