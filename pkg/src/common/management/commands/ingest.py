# common/management/commands/ingest.py
from common.management.base import SpectraCommand, comma_separated
from network_datasets.services.openflights import (
    ingest_openflights,
    load_region_mapping,
)
from network_datasets.services.storage import save


class Command(SpectraCommand):
    help = "Builds airline region networks from OpenFlights route and airport files"

    def add_arguments(self, parser):
        parser.add_argument("--routes", required=True)
        parser.add_argument("--airports", required=True)
        parser.add_argument("--mapping", default=None)
        parser.add_argument("--airlines", type=comma_separated, required=True)
        parser.add_argument("--out", required=True)

    def run(self, **options):
        mapping = load_region_mapping(options["mapping"])
        dataset = ingest_openflights(
            options["routes"], options["airports"], mapping, options["airlines"]
        )
        save(dataset, options["out"])
        self.success(
            f"N={len(dataset)} n={dataset.n} airlines={','.join(dataset.ids)} "
            f"-> {options['out']}"
        )
