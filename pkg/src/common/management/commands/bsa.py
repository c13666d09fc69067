# common/management/commands/bsa.py
import logging
from pathlib import Path

from barycentric.domain import BarycentricCoordinates, Projection
from barycentric.exceptions import DegenerateTriangle, SingularSystem
from barycentric.services.polygon import embed_polygon_2d
from bsa.domain import SEARCH_CHOICES, SEARCH_EXHAUSTIVE, BSAConfig
from bsa.exceptions import DegenerateDataset
from bsa.services.fitting import dataset_spectra, fit, fit_backward, fit_subset
from bsa.services.path import elbow_dimension, mse_ratios
from bsa.services.reconstruction import reconstruct, variance_explained
from common.management.base import SpectraCommand
from common.serializers import BackwardPathSerializer, BSAResultSerializer
from common.services.reports import (
    mse_table,
    projection_2d_table,
    weights_table,
    write_report,
)
from network_datasets.domain import Dataset
from network_datasets.services.storage import load, save

logger = logging.getLogger(__name__)


class Command(SpectraCommand):
    help = "Runs sample-limited barycentric subspace analysis on a dataset"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True)
        parser.add_argument("--refs", type=int, required=True)
        parser.add_argument("--convex", action="store_true")
        parser.add_argument("--backward", action="store_true")
        parser.add_argument(
            "--search", choices=SEARCH_CHOICES, default=SEARCH_EXHAUSTIVE
        )
        parser.add_argument("--min-sep", type=float, default=0.0)
        parser.add_argument("--distinct-labels", action="store_true")
        parser.add_argument("--parallel", action="store_true")
        parser.add_argument("--out", required=True)
        parser.add_argument("--reconstruct", default=None)

    def run(self, **options):
        filtered = options["min_sep"] > 0 or options["distinct_labels"]
        if options["backward"] and filtered:
            raise ValueError("Фильтры опор недоступны для обратного пути")
        dataset = load(options["input"])
        config = BSAConfig(
            num_refs=options["refs"],
            convex=options["convex"],
            search=options["search"],
            min_ref_separation=options["min_sep"],
            parallel=options["parallel"],
            labels=dataset.labels,
            distinct_labels=options["distinct_labels"],
        )
        config.check_dataset_size(len(dataset))

        tables = {}
        payload = {}
        if options["backward"]:
            path = fit_backward(dataset.networks, config)
            step = path.step_for(config.num_refs)
            result = fit_subset(
                dataset_spectra(dataset.networks), step.ref_indices, config.convex
            )
            payload["path"] = BackwardPathSerializer(path).data
            payload["mse_ratios"] = {
                str(d): ratio for d, ratio in mse_ratios(path).items()
            }
            payload["elbow_dimension"] = elbow_dimension(path)
            tables["mse_by_dimension"] = mse_table(dataset, path)
        else:
            result = fit(dataset.networks, config)

        payload["fit"] = BSAResultSerializer(result, context={"dataset": dataset}).data
        try:
            payload["variance_explained"] = variance_explained(dataset.networks, result)
        except DegenerateDataset:
            payload["variance_explained"] = None
        tables["weights"] = weights_table(dataset, result)
        if result.num_refs == 3:
            try:
                polygon = embed_polygon_2d(list(result.subspace.refs))
                tables["projection_2d"] = projection_2d_table(dataset, result, polygon)
            except (DegenerateTriangle, SingularSystem) as e:
                logger.warning(f"No planar embedding for the references: {e}")

        write_report(options["out"], "bsa", dataset, payload, tables)
        if options["reconstruct"]:
            self.write_reconstructions(dataset, result, Path(options["reconstruct"]))

        ref_ids = [dataset[i].id for i in result.ref_indices]
        self.success(
            f"{'convex' if config.convex else 'plain'} BSA: "
            f"refs={','.join(ref_ids)} mse={result.mse:.6e} -> {options['out']}"
        )

    def write_reconstructions(self, dataset, result, directory):
        directory.mkdir(parents=True, exist_ok=True)
        for k, datum in enumerate(dataset):
            projection = Projection(
                coords=BarycentricCoordinates(weights=result.weights[k]),
                point=result.projections[k],
                squared_error=float(result.per_datum_sq_error[k]),
            )
            rebuilt = reconstruct(datum, projection)
            save(
                Dataset(
                    networks=[rebuilt],
                    labels=[dataset.label(k)],
                    meta={
                        "source": datum.id,
                        "ref_ids": ";".join(dataset[i].id for i in result.ref_indices),
                        "squared_error": repr(projection.squared_error),
                    },
                ),
                directory / f"{datum.id}.json",
            )
        logger.info(f"Wrote {len(dataset)} reconstructed networks to {directory}")
