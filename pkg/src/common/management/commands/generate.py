# common/management/commands/generate.py
from common.management.base import SpectraCommand
from network_datasets.services.generators import (
    generate_clustered,
    generate_two_parameter,
)
from network_datasets.services.storage import save


class Command(SpectraCommand):
    help = "Generates a simulated network dataset and saves it as JSON"

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=["two-parameter", "clustered"])
        parser.add_argument("--num", type=int, default=16)
        parser.add_argument("--per-cluster", type=int, default=5)
        parser.add_argument("--sigma", type=float, default=None)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", required=True)

    def run(self, **options):
        if options["kind"] == "two-parameter":
            dataset = generate_two_parameter(options["num"], seed=options["seed"])
        else:
            dataset = generate_clustered(
                options["per_cluster"], sigma=options["sigma"], seed=options["seed"]
            )
        save(dataset, options["out"])
        labels = sorted({label for label in dataset.labels or () if label})
        if options["kind"] == "two-parameter":
            labels = sorted({label.split("(")[0] for label in labels})
        self.success(
            f"N={len(dataset)} n={dataset.n} labels={','.join(labels)} "
            f"-> {options['out']}"
        )
