# barycentric/apps.py
from django.apps import AppConfig


class BarycentricConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "barycentric"
    verbose_name = "Barycentric subspaces"
