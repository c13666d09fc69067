# network_datasets/tests/test_storage.py
import json

import numpy as np
import pytest

from network_datasets.domain import Dataset
from network_datasets.exceptions import DatasetIoError, SchemaError
from network_datasets.services.generators import generate_clustered
from network_datasets.services.storage import load, save
from spectral.domain import Network


def document(*adjacencies, n=2):
    return {
        "n": n,
        "networks": [
            {"id": f"g{k}", "label": None, "adjacency": adjacency}
            for k, adjacency in enumerate(adjacencies)
        ],
        "meta": {"generator": "manual"},
    }


def write(tmp_path, payload):
    path = tmp_path / "dataset.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_round_trip_is_exact(tmp_path):
    dataset = generate_clustered(5, sigma=0.05, seed=42)
    path = tmp_path / "clustered.json"
    save(dataset, path)
    loaded = load(path)
    assert loaded.ids == dataset.ids
    assert loaded.labels == dataset.labels
    assert loaded.meta == dataset.meta
    for original, restored in zip(dataset, loaded):
        np.testing.assert_array_equal(original.adjacency, restored.adjacency)


def test_round_trip_keeps_whitespace(tmp_path):
    """Проверка: пробелы по краям меток, идентификаторов и метаданных сохраняются"""
    adjacency = np.array([[0.0, 1.0], [1.0, 0.0]])
    dataset = Dataset(
        networks=[
            Network(id=" padded ", adjacency=adjacency),
            Network(id="plain", adjacency=adjacency),
        ],
        labels=["  Air France", "SU  "],
        meta={"source": " routes.dat ", "note": ""},
    )
    path = tmp_path / "padded.json"
    save(dataset, path)
    loaded = load(path)
    assert loaded.ids == dataset.ids
    assert loaded.labels == dataset.labels
    assert loaded.meta == {"source": " routes.dat ", "note": ""}


def test_missing_labels_stay_empty(tmp_path):
    loaded = load(write(tmp_path, document([[0, 1], [1, 0]])))
    assert loaded.labels is None
    assert loaded.meta == {"generator": "manual"}


def test_asymmetric_matrix(tmp_path):
    path = write(tmp_path, document([[0, 1], [0.5, 0]]))
    with pytest.raises(SchemaError) as e:
        load(path)
    assert e.value.pointer == "/networks/0/adjacency"


def test_mismatched_sizes(tmp_path):
    path = write(
        tmp_path, document([[0, 1], [1, 0]], [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    )
    with pytest.raises(SchemaError) as e:
        load(path)
    assert e.value.pointer == "/networks/1/adjacency"


def test_missing_field(tmp_path):
    payload = document([[0, 1], [1, 0]])
    del payload["n"]
    with pytest.raises(SchemaError) as e:
        load(write(tmp_path, payload))
    assert e.value.pointer == "/n"


def test_duplicate_ids(tmp_path):
    payload = document([[0, 1], [1, 0]], [[0, 2], [2, 0]])
    payload["networks"][1]["id"] = "g0"
    with pytest.raises(SchemaError) as e:
        load(write(tmp_path, payload))
    assert e.value.pointer == "/networks/1/id"


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(SchemaError):
        load(path)


def test_missing_file(tmp_path):
    with pytest.raises(DatasetIoError):
        load(tmp_path / "absent.json")
