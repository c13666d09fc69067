# network_datasets/apps.py
from django.apps import AppConfig


class NetworkDatasetsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "network_datasets"
    verbose_name = "Network datasets"
