# common/tests/test_commands.py
import json
import tempfile
from io import StringIO
from pathlib import Path

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from network_datasets.domain import Dataset
from network_datasets.services.storage import load, save
from spectral.domain import Network

DATA_DIR = Path(__file__).resolve().parent.parent.parent / "network_datasets" / "data"
SAMPLE_AIRLINES = "AF,SU,U2,FR,AZ,LX,LH,BA,KL,IB,TK,SK"
PATH_GRAPH = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO())
    return out.getvalue()


def read_report(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


@pytest.fixture
def two_parameter(tmp_path):
    path = tmp_path / "two.json"
    run("generate", "two-parameter", "--num", "6", "--seed", "3", "--out", str(path))
    return path


@pytest.fixture
def scaled_paths(tmp_path):
    """Три масштабированных пути: спектры лежат на одной прямой"""
    path = tmp_path / "scaled.json"
    save(
        Dataset(
            networks=[
                Network(id=f"p{k}", adjacency=k * PATH_GRAPH) for k in (1, 2, 3)
            ]
        ),
        path,
    )
    return path


def test_generate_two_parameter(two_parameter):
    dataset = load(two_parameter)
    assert len(dataset) == 6
    assert dataset.n == 6
    assert dataset.meta["seed"] == "3"


def test_generate_without_out():
    with pytest.raises(CommandError):
        call_command("generate", "clustered")


def test_generate_rejects_empty_dataset(tmp_path):
    with pytest.raises(CommandError):
        out = tmp_path / "x.json"
        run("generate", "two-parameter", "--num", "0", "--out", str(out))


def test_bsa_all_references_reproduce_data(two_parameter, tmp_path):
    """Проверка: опорами служат все сети, ошибка нулевая"""
    out = tmp_path / "report.json"
    run("bsa", "--input", str(two_parameter), "--refs", "6", "--out", str(out))
    report = read_report(out)
    assert report["command"] == "bsa"
    assert report["result"]["fit"]["mse"] == pytest.approx(0.0, abs=1e-9)
    assert report["result"]["fit"]["ref_indices"] == [0, 1, 2, 3, 4, 5]
    assert report["dataset_meta"]["generator"] == "two-parameter"


def test_bsa_convex_error_not_below_plain(two_parameter, tmp_path):
    plain, convex = tmp_path / "plain.json", tmp_path / "convex.json"
    run("bsa", "--input", str(two_parameter), "--refs", "3", "--out", str(plain))
    run(
        "bsa",
        "--input",
        str(two_parameter),
        "--refs",
        "3",
        "--convex",
        "--out",
        str(convex),
    )
    plain_mse = read_report(plain)["result"]["fit"]["mse"]
    convex_mse = read_report(convex)["result"]["fit"]["mse"]
    assert plain_mse <= convex_mse + 1e-12
    assert read_report(convex)["result"]["fit"]["variant"] == "convex"


def test_bsa_weights_table(two_parameter, tmp_path):
    out = tmp_path / "report.json"
    run("bsa", "--input", str(two_parameter), "--refs", "2", "--out", str(out))
    table = read_report(out)["plot_tables"]["weights"].splitlines()
    assert table[0].startswith("id,label,w_")
    assert table[0].endswith(",sq_error")
    assert len(table) == 7


def test_bsa_too_many_references(two_parameter, tmp_path):
    with pytest.raises(CommandError):
        run(
            "bsa",
            "--input",
            str(two_parameter),
            "--refs",
            "7",
            "--out",
            str(tmp_path / "r.json"),
        )


def test_bsa_distinct_labels_without_labels(scaled_paths, tmp_path):
    with pytest.raises(CommandError):
        run(
            "bsa",
            "--input",
            str(scaled_paths),
            "--refs",
            "2",
            "--distinct-labels",
            "--out",
            str(tmp_path / "r.json"),
        )


def test_bsa_missing_input(tmp_path):
    with pytest.raises(CommandError):
        run(
            "bsa",
            "--input",
            str(tmp_path / "missing.json"),
            "--refs",
            "2",
            "--out",
            str(tmp_path / "r.json"),
        )


def test_bsa_reconstruct(two_parameter, tmp_path):
    out, directory = tmp_path / "report.json", tmp_path / "rebuilt"
    run(
        "bsa",
        "--input",
        str(two_parameter),
        "--refs",
        "6",
        "--reconstruct",
        str(directory),
        "--out",
        str(out),
    )
    original = load(two_parameter)
    for net in original:
        rebuilt = load(directory / f"{net.id}.json")
        assert rebuilt.ids == [net.id]
        np.testing.assert_allclose(rebuilt[0].adjacency, net.adjacency, atol=1e-6)


class ClusteredCommandTests(SimpleTestCase):
    def test_backward_convex_selects_one_reference_per_cluster(self):
        """Проверка: три опоры обратного пути из трёх разных кластеров"""
        with tempfile.TemporaryDirectory() as directory:
            dataset_path = Path(directory) / "clustered.json"
            out = Path(directory) / "report.json"
            run(
                "generate",
                "clustered",
                "--per-cluster",
                "5",
                "--seed",
                "42",
                "--out",
                str(dataset_path),
            )
            run(
                "bsa",
                "--input",
                str(dataset_path),
                "--refs",
                "3",
                "--backward",
                "--convex",
                "--out",
                str(out),
            )
            dataset = load(dataset_path)
            report = read_report(out)

        indices = report["result"]["fit"]["ref_indices"]
        self.assertEqual(len({dataset.label(i) for i in indices}), 3)
        self.assertIn("mse_by_dimension", report["plot_tables"])
        self.assertIn("projection_2d", report["plot_tables"])
        steps = report["result"]["path"]["steps"]
        self.assertEqual([s["dimension"] for s in steps], list(range(14, -1, -1)))


def test_ingest_sample(tmp_path):
    out = tmp_path / "airlines.json"
    stdout = run(
        "ingest",
        "--routes",
        str(DATA_DIR / "routes_sample.dat"),
        "--airports",
        str(DATA_DIR / "airports_sample.dat"),
        "--airlines",
        SAMPLE_AIRLINES,
        "--out",
        str(out),
    )
    dataset = load(out)
    assert len(dataset) == 12
    assert dataset.n == 6
    assert "N=12 n=6" in stdout


def test_ingest_malformed_routes(tmp_path):
    routes = tmp_path / "routes.dat"
    lines = (DATA_DIR / "routes_sample.dat").read_text(encoding="utf-8").splitlines()
    lines[4] = lines[4] + ",extra"
    routes.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(CommandError, match="Строка 5"):
        run(
            "ingest",
            "--routes",
            str(routes),
            "--airports",
            str(DATA_DIR / "airports_sample.dat"),
            "--airlines",
            "AF",
            "--out",
            str(tmp_path / "out.json"),
        )


def test_tpca_report(two_parameter, tmp_path):
    out = tmp_path / "tpca.json"
    run(
        "tpca",
        "--input",
        str(two_parameter),
        "--components",
        "2",
        "--deform",
        "0.5",
        "--out",
        str(out),
    )
    report = read_report(out)
    ratios = report["result"]["explained_variance_ratio"]
    assert len(ratios) == 2
    assert ratios[0] >= ratios[1]
    assert set(report["plot_tables"]) == {
        "scores",
        "explained_variance",
        "deformations",
    }
    assert len(report["plot_tables"]["scores"].splitlines()) == 7


def test_tpca_identical_networks(tmp_path):
    path = tmp_path / "same.json"
    save(
        Dataset(
            networks=[Network(id=f"p{k}", adjacency=PATH_GRAPH) for k in range(3)]
        ),
        path,
    )
    with pytest.raises(CommandError):
        run(
            "tpca",
            "--input",
            str(path),
            "--components",
            "1",
            "--out",
            str(tmp_path / "r.json"),
        )


def test_polygon_report(two_parameter, tmp_path):
    out = tmp_path / "polygon.json"
    run("polygon", "--input", str(two_parameter), "--refs", "0,1,2", "--out", str(out))
    report = read_report(out)
    result = report["result"]
    assert len(result["ref_points_2d"]) == 3
    assert len(result["halfplane_betas"]) == 5
    if result["closed"]:
        assert result["num_sides"] == len(result["vertices_2d"])
    else:
        assert result["num_sides"] == len(result["vertices_2d"]) + 1
    assert report["plot_tables"]["halfplanes"].startswith("r,alpha_x,alpha_y,beta")


def test_polygon_collinear_references(scaled_paths, tmp_path):
    with pytest.raises(CommandError):
        run(
            "polygon",
            "--input",
            str(scaled_paths),
            "--refs",
            "0,1,2",
            "--out",
            str(tmp_path / "r.json"),
        )


@pytest.mark.parametrize("refs", ["0,1", "0,0,1", "0,1,9"])
def test_polygon_bad_references(two_parameter, tmp_path, refs):
    with pytest.raises(CommandError):
        run(
            "polygon",
            "--input",
            str(two_parameter),
            "--refs",
            refs,
            "--out",
            str(tmp_path / "r.json"),
        )
