# network_datasets/services/openflights.py
import json
import logging
import re
from pathlib import Path

import numpy as np
import pandas as pd
from django.conf import settings

from network_datasets.domain import Dataset, RegionMapping
from network_datasets.exceptions import EmptySelection, ParseError, SchemaError
from network_datasets.serializers import (
    RegionMappingSerializer,
    error_pointer,
    first_error_message,
)
from spectral.domain import Network

logger = logging.getLogger(__name__)

ROUTE_COLUMNS = [
    "airline",
    "airline_id",
    "source_airport",
    "source_airport_id",
    "destination_airport",
    "destination_airport_id",
    "codeshare",
    "stops",
    "equipment",
]
AIRPORT_COLUMNS = [
    "airport_id",
    "name",
    "city",
    "country",
    "iata",
    "icao",
    "latitude",
    "longitude",
    "altitude",
    "timezone",
    "dst",
    "tz",
    "type",
    "source",
]
NULL = "\\N"
LINE_PATTERN = re.compile(r"line (\d+)")


def load_region_mapping(path=None):
    """
    Загружает отображение стран в макрорегионы.

    Args:
        path: JSON-файл; по умолчанию SPECTRA_REGION_MAPPING

    Raises:
        SchemaError: если регионов не шесть или страна отнесена к неизвестному региону
    """
    if path is None:
        path = getattr(settings, "SPECTRA_REGION_MAPPING")
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SchemaError(f"Некорректный JSON в {path}: {e}")
    serializer = RegionMappingSerializer(data=payload)
    if not serializer.is_valid():
        raise SchemaError(
            first_error_message(serializer.errors),
            pointer=error_pointer(serializer.errors),
        )
    return RegionMapping(
        regions=serializer.validated_data["regions"],
        country_to_region=dict(serializer.validated_data["country_to_region"]),
    )


def _read(path, columns):
    try:
        return pd.read_csv(
            path,
            header=None,
            names=columns,
            dtype=str,
            na_values=[NULL],
            keep_default_na=False,
            skip_blank_lines=False,
        )
    except pd.errors.ParserError as e:
        match = LINE_PATTERN.search(str(e))
        raise ParseError(
            f"{Path(path).name}: {e}".strip(),
            line=int(match.group(1)) if match else None,
        )


def _blank(series):
    return series.isna() | (series.str.strip() == "")


def read_routes(path):
    routes = _read(path, ROUTE_COLUMNS)
    malformed = (
        _blank(routes["airline"])
        | (_blank(routes["source_airport"]) & _blank(routes["source_airport_id"]))
        | (
            _blank(routes["destination_airport"])
            & _blank(routes["destination_airport_id"])
        )
        | ~(routes["stops"].fillna("0").str.strip().str.fullmatch(r"\d*"))
    )
    if malformed.any():
        line = int(np.flatnonzero(malformed.to_numpy())[0]) + 1
        raise ParseError(f"{Path(path).name}: неполная запись маршрута", line=line)
    return routes


def read_airports(path):
    airports = _read(path, AIRPORT_COLUMNS)
    if _blank(airports["country"]).all():
        raise ParseError(f"{Path(path).name}: нет столбца страны", line=1)
    return airports


def _country_lookup(airports):
    known = airports.dropna(subset=["country"])
    by_id = dict(zip(known["airport_id"].str.strip(), known["country"]))
    with_code = known.dropna(subset=["iata"])
    by_code = dict(zip(with_code["iata"].str.strip(), with_code["country"]))
    return by_id, by_code


def _endpoint_regions(routes, prefix, by_id, by_code, mapping):
    """Индекс региона конца маршрута; -1 вне отображения."""
    regions = np.full(len(routes), -1)
    unknown = []
    for k, (airport_id, code) in enumerate(
        zip(routes[f"{prefix}_airport_id"], routes[f"{prefix}_airport"])
    ):
        country = None
        if isinstance(airport_id, str) and airport_id.strip() in by_id:
            country = by_id[airport_id.strip()]
        elif isinstance(code, str) and code.strip() in by_code:
            country = by_code[code.strip()]
        else:
            unknown.append(airport_id if isinstance(airport_id, str) else code)
            continue
        index = mapping.region_index(country)
        if index is not None:
            regions[k] = index
    return regions, unknown


def route_weights(routes, by_id, by_code, mapping):
    """
    Матрица долей маршрутов между макрорегионами для одной авиакомпании.

    Направление маршрута не учитывается; маршруты внутри региона попадают
    на диагональ, маршруты с концом вне отображения учитываются только в
    общем числе маршрутов.
    """
    size = len(mapping.regions)
    source, unknown_source = _endpoint_regions(routes, "source", by_id, by_code, mapping)
    target, unknown_target = _endpoint_regions(
        routes, "destination", by_id, by_code, mapping
    )
    for airport in sorted(set(unknown_source + unknown_target), key=str):
        logger.warning(f"Unknown airport {airport}: route counted in total only")

    mapped = (source >= 0) & (target >= 0)
    counts = np.zeros((size, size))
    np.add.at(counts, (source[mapped], target[mapped]), 1.0)
    counts = counts + counts.T
    counts[np.diag_indices(size)] /= 2
    return counts / len(routes), int(mapped.sum())


def ingest_openflights(routes_file, airports_file, mapping, airlines):
    """
    Строит сети авиакомпаний на макрорегионах из файлов в формате OpenFlights.

    Вес ребра {r1, r2} - доля маршрутов авиакомпании между регионами r1 и r2
    среди всех её маршрутов в мире.

    Args:
        routes_file: файл маршрутов (9 столбцов, \\N - пустое значение)
        airports_file: файл аэропортов
        mapping: RegionMapping
        airlines: коды авиакомпаний

    Returns:
        Dataset: по одной сети из len(mapping.regions) узлов на авиакомпанию

    Raises:
        ParseError: при некорректной строке (с номером строки)
        EmptySelection: если ни одна авиакомпания не найдена
    """
    routes = read_routes(routes_file)
    by_id, by_code = _country_lookup(read_airports(airports_file))
    codes = routes["airline"].str.strip()

    networks, labels = [], []
    for airline in airlines:
        own = routes[codes == airline]
        if own.empty:
            logger.warning(f"Airline {airline} has no routes, skipped")
            continue
        weights, mapped = route_weights(own, by_id, by_code, mapping)
        logger.info(
            f"Airline {airline}: {len(own)} routes, {mapped} between mapped regions"
        )
        networks.append(Network(id=airline, adjacency=weights))
        labels.append(airline)

    if not networks:
        raise EmptySelection("Ни одна из авиакомпаний не найдена в файле маршрутов")
    return Dataset(
        networks=networks,
        labels=labels,
        meta={
            "generator": "openflights",
            "routes": Path(routes_file).name,
            "airports": Path(airports_file).name,
            "regions": ";".join(mapping.regions),
        },
    )
