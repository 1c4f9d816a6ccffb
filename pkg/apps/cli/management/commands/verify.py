from apps.builder.formats import parse_embedding_set
from apps.cli.base import EmbeddingCommand
from apps.cli.reports import verification_report, verification_rows
from apps.cli.serializers import VerifyReportSerializer
from apps.scheme.embedding import scheme_to_set
from apps.scheme.formats import parse_scheme
from utils.exceptions import NotAnEmbeddingSet


class Command(EmbeddingCommand):
    help = "Checks an embedding set: Eulerian circuits, compatibility, strength, faces and genus."
    command_name = "verify"

    def add_arguments(self, parser):
        parser.add_argument("path", help="Embedding-set file (or scheme file with --format scheme).")
        parser.add_argument("--format", choices=("set", "scheme"), default="set")
        parser.add_argument("--strict-strong", action="store_true", help="Fail unless the set is strong.")
        self.add_json_argument(parser)

    def run(self, config):
        text = self.read_input(config["path"])
        if config["format"] == "scheme":
            embedding_set = scheme_to_set(parse_scheme(text))
        else:
            embedding_set = parse_embedding_set(text)

        result = verification_report(embedding_set, strict_strong=config["strict_strong"])
        if config["json"]:
            self.write_json(VerifyReportSerializer(result).data)
        else:
            self.write_lines(verification_rows(result))
        if not result["ok"]:
            raise NotAnEmbeddingSet(result["message"])
