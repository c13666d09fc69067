# common/management/commands/polygon.py
from barycentric.services.polygon import embed_polygon_2d
from common.management.base import SpectraCommand, comma_separated
from common.serializers import PolygonSerializer
from common.services.reports import (
    halfplanes_table,
    reference_points_table,
    vertices_table,
    write_report,
)
from network_datasets.services.storage import load
from spectral.services.networks import spectrum


def _indices(value):
    return [int(item) for item in comma_separated(value)]


class Command(SpectraCommand):
    help = "Embeds the barycentric subspace of three reference networks in the plane"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True)
        parser.add_argument("--refs", type=_indices, required=True)
        parser.add_argument("--out", required=True)

    def run(self, **options):
        dataset = load(options["input"])
        indices = options["refs"]
        if len(indices) != 3 or len(set(indices)) != 3:
            raise ValueError("Нужны три различных индекса опор")
        if not all(0 <= i < len(dataset) for i in indices):
            raise ValueError(f"Индексы опор вне диапазона [0, {len(dataset) - 1}]")

        polygon = embed_polygon_2d([spectrum(dataset[i]) for i in indices])
        ids = [dataset[i].id for i in indices]
        tables = {
            "reference_points": reference_points_table(ids, polygon),
            "vertices": vertices_table(polygon),
            "halfplanes": halfplanes_table(polygon),
        }
        payload = {"ref_ids": ids, **PolygonSerializer(polygon).data}
        write_report(options["out"], "polygon", dataset, payload, tables)
        shape = "closed" if polygon.closed else "open"
        self.success(
            f"{shape} polygon with {polygon.num_sides} sides for "
            f"{','.join(ids)} -> {options['out']}"
        )
