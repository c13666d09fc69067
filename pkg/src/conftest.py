import os

import django
from django.conf import settings  # noqa: F401

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "spectra.settings")
django.setup()

from pytest_factoryboy import register  # noqa: E402

from spectral.tests.factories import NetworkFactory  # noqa: E402

register(NetworkFactory)
