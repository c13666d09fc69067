# network_datasets/services/storage.py
import json
import logging
from pathlib import Path

from network_datasets.domain import Dataset
from network_datasets.exceptions import DatasetIoError, SchemaError
from network_datasets.serializers import (
    DatasetSerializer,
    error_pointer,
    first_error_message,
)

logger = logging.getLogger(__name__)


def dataset_to_dict(dataset):
    return DatasetSerializer(dataset).data


def dataset_from_dict(payload):
    """
    Собирает выборку из JSON-документа.

    Raises:
        SchemaError: с JSON-указателем на первое некорректное поле
    """
    if not isinstance(payload, dict):
        raise SchemaError("Ожидался JSON-объект")
    serializer = DatasetSerializer(data=payload)
    if not serializer.is_valid():
        raise SchemaError(
            first_error_message(serializer.errors),
            pointer=error_pointer(serializer.errors),
        )
    data = serializer.validated_data
    networks = [item["network"] for item in data["networks"]]
    labels = [item.get("label") for item in data["networks"]]
    return Dataset(
        networks=networks,
        labels=None if all(label is None for label in labels) else labels,
        meta=data.get("meta", {}),
    )


def save(dataset, path):
    """Сохраняет выборку в JSON; числа записываются без потери точности."""
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8") as f:
            json.dump(dataset_to_dict(dataset), f, ensure_ascii=False, indent=1)
    except OSError as e:
        raise DatasetIoError(f"Не удалось записать {path}: {e}")
    logger.info(f"Saved dataset of {len(dataset)} networks to {path}")


def load(path):
    """
    Загружает выборку из JSON.

    Raises:
        DatasetIoError: если файл не читается
        SchemaError: если документ не соответствует схеме
    """
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as f:
            payload = json.load(f)
    except OSError as e:
        raise DatasetIoError(f"Не удалось прочитать {path}: {e}")
    except json.JSONDecodeError as e:
        raise SchemaError(f"Некорректный JSON: {e}")
    dataset = dataset_from_dict(payload)
    logger.info(f"Loaded dataset of {len(dataset)} networks from {path}")
    return dataset
