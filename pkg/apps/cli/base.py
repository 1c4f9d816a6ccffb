import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from utils.exceptions import USAGE_ERROR, EmbeddingError

from .serializers import CommandConfigSerializer, first_error

logger = logging.getLogger(__name__)


class EmbeddingCommand(BaseCommand):
    """
    Shared plumbing for the kn3 commands: flags go through
    CommandConfigSerializer, domain errors become CommandError with the
    error's exit code, and --json output is rendered with DRF's JSONRenderer.
    """
    command_name = None

    def add_order_arguments(self, parser):
        parser.add_argument("--n", type=int, help="Order of the hypergraph.")
        parser.add_argument("--multiplicity", type=int, default=1, help="Copies of every triple (default 1).")

    def add_orientation_arguments(self, parser):
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--orientable", action="store_true", help="Orientable embedding (default).")
        group.add_argument("--nonorientable", action="store_true", help="Non-orientable embedding.")

    def add_json_argument(self, parser):
        parser.add_argument("--json", action="store_true", help="Print the report as JSON.")

    def handle(self, *args, **options):
        data = {
            key: value
            for key, value in options.items()
            if key in CommandConfigSerializer().fields and value is not None
        }
        data["command"] = self.command_name
        serializer = CommandConfigSerializer(data=data)
        if not serializer.is_valid():
            raise CommandError(first_error(serializer.errors), returncode=USAGE_ERROR)

        try:
            self.run(serializer.validated_data)
        except EmbeddingError as e:
            logger.debug(f"{self.command_name} failed: {e.detail}")
            raise CommandError(str(e.detail), returncode=e.exit_code)
        except OSError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)

    def run(self, config):
        raise NotImplementedError

    def read_input(self, path):
        return Path(path).read_text(encoding="utf-8")

    def write_output(self, path, text):
        if path:
            Path(path).write_text(text, encoding="utf-8")
        else:
            self.stdout.write(text, ending="")

    def write_json(self, data):
        self.stdout.write(JSONRenderer().render(data).decode("utf-8"))

    def write_lines(self, rows, stream=None):
        """Aligned `label  value` lines, on stdout unless another stream is given."""
        stream = stream if stream is not None else self.stdout
        width = max(len(label) for label, _ in rows)
        for label, value in rows:
            stream.write(f"{label.ljust(width)}  {value}")
