# common/serializers.py
from rest_framework import serializers


class ReportSerializer(serializers.Serializer):
    tool_version = serializers.CharField()
    command = serializers.CharField()
    dataset_meta = serializers.DictField(
        child=serializers.CharField(allow_blank=True, trim_whitespace=False)
    )
    result = serializers.JSONField()
    plot_tables = serializers.DictField(
        child=serializers.CharField(allow_blank=True, trim_whitespace=False)
    )


class BSAResultSerializer(serializers.Serializer):
    variant = serializers.SerializerMethodField()
    ref_indices = serializers.ListField(child=serializers.IntegerField())
    ref_ids = serializers.SerializerMethodField()
    mse = serializers.FloatField()
    weights = serializers.SerializerMethodField()
    projections = serializers.SerializerMethodField()
    per_datum_sq_error = serializers.SerializerMethodField()

    def get_variant(self, obj):
        return "convex" if obj.convex else "plain"

    def get_ref_ids(self, obj):
        dataset = self.context["dataset"]
        return [dataset[i].id for i in obj.ref_indices]

    def get_weights(self, obj):
        return obj.weights.tolist()

    def get_projections(self, obj):
        return [point.values.tolist() for point in obj.projections]

    def get_per_datum_sq_error(self, obj):
        return obj.per_datum_sq_error.tolist()


class BackwardStepSerializer(serializers.Serializer):
    dimension = serializers.IntegerField()
    ref_indices = serializers.ListField(child=serializers.IntegerField())
    mse = serializers.FloatField()


class BackwardPathSerializer(serializers.Serializer):
    variant = serializers.SerializerMethodField()
    steps = BackwardStepSerializer(many=True)

    def get_variant(self, obj):
        return "convex" if obj.convex else "plain"


class TangentPCAResultSerializer(serializers.Serializer):
    explained_variance_ratio = serializers.SerializerMethodField()
    scores = serializers.SerializerMethodField()
    components = serializers.SerializerMethodField()
    mean = serializers.SerializerMethodField()

    def get_explained_variance_ratio(self, obj):
        return obj.explained_variance_ratio.tolist()

    def get_scores(self, obj):
        return obj.scores.tolist()

    def get_components(self, obj):
        return obj.components.tolist()

    def get_mean(self, obj):
        return obj.mean.adjacency.tolist()


class PolygonSerializer(serializers.Serializer):
    closed = serializers.BooleanField()
    num_sides = serializers.IntegerField()
    ref_points_2d = serializers.SerializerMethodField()
    vertices_2d = serializers.SerializerMethodField()
    halfplane_alphas = serializers.SerializerMethodField()
    halfplane_betas = serializers.SerializerMethodField()

    def get_ref_points_2d(self, obj):
        return obj.ref_points_2d.tolist()

    def get_vertices_2d(self, obj):
        return obj.vertices_2d.tolist()

    def get_halfplane_alphas(self, obj):
        return obj.halfplane_alphas.tolist()

    def get_halfplane_betas(self, obj):
        return obj.halfplane_betas.tolist()
