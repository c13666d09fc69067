# common/management/commands/tpca.py
from baselines.services.tangent import tangent_pca
from common.management.base import SpectraCommand
from common.serializers import TangentPCAResultSerializer
from common.services.reports import (
    deformation_table,
    explained_variance_table,
    scores_table,
    write_report,
)
from network_datasets.services.storage import load


class Command(SpectraCommand):
    help = "Runs tangent PCA at the Frechet mean of node-permutation classes"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True)
        parser.add_argument("--components", type=int, default=2)
        parser.add_argument("--deform", type=float, default=None)
        parser.add_argument("--parallel", action="store_true")
        parser.add_argument("--out", required=True)

    def run(self, **options):
        dataset = load(options["input"])
        result = tangent_pca(
            dataset.networks, options["components"], parallel=options["parallel"]
        )
        tables = {
            "scores": scores_table(dataset, result),
            "explained_variance": explained_variance_table(result),
        }
        if options["deform"] is not None:
            tables["deformations"] = deformation_table(result, options["deform"])
        write_report(
            options["out"],
            "tpca",
            dataset,
            TangentPCAResultSerializer(result).data,
            tables,
        )
        ratios = ", ".join(f"{r:.3f}" for r in result.explained_variance_ratio)
        self.success(f"Tangent PCA: explained variance [{ratios}] -> {options['out']}")
