# network_datasets/serializers.py
from rest_framework import serializers

from spectral.exceptions import NonFinite, NonSquare, NonSymmetric
from spectral.services.networks import validate_network

REGION_COUNT = 6


class NetworkSerializer(serializers.Serializer):
    id = serializers.CharField(trim_whitespace=False)
    label = serializers.CharField(
        allow_null=True,
        allow_blank=True,
        required=False,
        default=None,
        trim_whitespace=False,
    )
    adjacency = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField()),
        allow_empty=False,
    )

    def to_representation(self, instance):
        network, label = instance
        return {
            "id": network.id,
            "label": label,
            "adjacency": network.adjacency.tolist(),
        }

    def validate(self, attrs):
        try:
            attrs["network"] = validate_network(attrs["adjacency"], attrs["id"])
        except (NonSquare, NonFinite, NonSymmetric) as e:
            raise serializers.ValidationError({"adjacency": [str(e)]})
        return attrs


class DatasetSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    networks = NetworkSerializer(many=True, allow_empty=False)
    meta = serializers.DictField(
        child=serializers.CharField(allow_blank=True, trim_whitespace=False),
        required=False,
    )

    def to_representation(self, instance):
        labels = instance.labels or (None,) * len(instance)
        return {
            "n": instance.n,
            "networks": [
                NetworkSerializer(pair).data for pair in zip(instance.networks, labels)
            ],
            "meta": dict(instance.meta),
        }

    def validate(self, attrs):
        errors = {}
        ids = set()
        for index, item in enumerate(attrs["networks"]):
            if item["network"].n != attrs["n"]:
                errors[index] = {
                    "adjacency": [
                        f"Размер {item['network'].n} не совпадает с n={attrs['n']}"
                    ]
                }
            elif item["id"] in ids:
                errors[index] = {"id": [f"Повторный идентификатор {item['id']}"]}
            ids.add(item["id"])
        if errors:
            raise serializers.ValidationError({"networks": errors})
        return attrs


class RegionMappingSerializer(serializers.Serializer):
    regions = serializers.ListField(
        child=serializers.CharField(),
        min_length=REGION_COUNT,
        max_length=REGION_COUNT,
    )
    country_to_region = serializers.DictField(child=serializers.CharField())

    def validate_regions(self, value):
        if len(set(value)) != len(value):
            raise serializers.ValidationError("Регионы должны быть различны")
        return value

    def validate(self, attrs):
        regions = set(attrs["regions"])
        unknown = {
            country: region
            for country, region in attrs["country_to_region"].items()
            if region not in regions
        }
        if unknown:
            raise serializers.ValidationError(
                {
                    "country_to_region": {
                        country: [f"Неизвестный регион {region}"]
                        for country, region in unknown.items()
                    }
                }
            )
        return attrs


def error_pointer(errors, path=""):
    """JSON-указатель на первое поле с ошибкой в serializer.errors."""
    if isinstance(errors, dict):
        for key, value in errors.items():
            if not value:
                continue
            if key == "non_field_errors":
                return path
            return error_pointer(value, f"{path}/{key}")
        return path
    if isinstance(errors, list):
        if all(isinstance(item, str) for item in errors):
            return path
        for index, item in enumerate(errors):
            if item:
                return error_pointer(item, f"{path}/{index}")
    return path


def first_error_message(errors):
    if isinstance(errors, dict):
        for value in errors.values():
            if value:
                return first_error_message(value)
    if isinstance(errors, list):
        for item in errors:
            if item:
                return first_error_message(item)
    return str(errors)

