# common/management/base.py
import logging

from django.core.management.base import BaseCommand, CommandError

from common.exceptions import SpectraError

logger = logging.getLogger(__name__)


class SpectraCommand(BaseCommand):
    """
    Команда анализа: ошибки предметной области, параметров и ввода-вывода становятся
    CommandError (код возврата 1, сообщение в stderr).
    """

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except (SpectraError, OSError, ValueError) as e:
            logger.error(f"{type(self).__module__.rsplit('.', 1)[-1]} failed: {e}")
            raise CommandError(str(e)) from e

    def run(self, **options):
        raise NotImplementedError

    def success(self, message):
        self.stdout.write(self.style.SUCCESS(message))


def comma_separated(value):
    return [item.strip() for item in value.split(",") if item.strip()]
