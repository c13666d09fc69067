# src/spectra/settings.py
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "spectra-local-only")
DEBUG = os.environ.get("DEBUG", "False") == "True"
ALLOWED_HOSTS: list[str] = []

INSTALLED_APPS = [
    "rest_framework",
    "spectral",
    "barycentric",
    "bsa",
    "baselines",
    "network_datasets",
    "common",
]

# Базы нет: все данные живут в JSON-файлах
DATABASES: dict = {}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

SPECTRA_VERSION = "0.1.0"

SPECTRA_LOG_LEVEL = os.environ.get("SPECTRA_LOG_LEVEL", "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        name: {"handlers": ["console"], "level": SPECTRA_LOG_LEVEL}
        for name in (
            "spectral",
            "barycentric",
            "bsa",
            "baselines",
            "network_datasets",
            "common",
        )
    },
}

# Геометрия спектров
SPECTRA_SYMMETRY_TOL = float(os.environ.get("SPECTRA_SYMMETRY_TOL", "1e-12"))
SPECTRA_CONTAINS_TOL = float(os.environ.get("SPECTRA_CONTAINS_TOL", "1e-9"))
SPECTRA_HALFSPACE_RESIDUAL = float(
    os.environ.get("SPECTRA_HALFSPACE_RESIDUAL", "1e-8")
)

# Квадратичное программирование
SPECTRA_QP_MAX_ITER = int(os.environ.get("SPECTRA_QP_MAX_ITER", "10000"))
SPECTRA_QP_TOL = float(os.environ.get("SPECTRA_QP_TOL", "1e-12"))

# Перебор опорных сетей
SPECTRA_SUBSET_BUDGET = int(os.environ.get("SPECTRA_SUBSET_BUDGET", "1000000"))
SPECTRA_MAX_WORKERS = int(os.environ.get("SPECTRA_MAX_WORKERS", "4"))
SPECTRA_RATIO_FLOOR = float(os.environ.get("SPECTRA_RATIO_FLOOR", "1e-10"))

# Касательный PCA
SPECTRA_PERMUTATION_MAX_NODES = int(
    os.environ.get("SPECTRA_PERMUTATION_MAX_NODES", "10")
)
SPECTRA_PERMUTATION_CHUNK = int(os.environ.get("SPECTRA_PERMUTATION_CHUNK", "20000"))
SPECTRA_FRECHET_TOL = float(os.environ.get("SPECTRA_FRECHET_TOL", "1e-9"))
SPECTRA_FRECHET_MAX_ITER = int(os.environ.get("SPECTRA_FRECHET_MAX_ITER", "100"))

# Данные
SPECTRA_DEFAULT_SIGMA = float(os.environ.get("SPECTRA_DEFAULT_SIGMA", "0.05"))
SPECTRA_REGION_MAPPING = os.environ.get(
    "SPECTRA_REGION_MAPPING",
    str(BASE_DIR / "network_datasets" / "data" / "regions.json"),
)
