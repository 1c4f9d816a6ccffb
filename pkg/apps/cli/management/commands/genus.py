from apps.cli.base import EmbeddingCommand
from apps.cli.reports import face_rows
from apps.cli.serializers import FaceReportSerializer
from apps.scheme.faces import trace_faces
from apps.scheme.formats import parse_scheme


class Command(EmbeddingCommand):
    help = "Traces the faces of an embedding scheme and reports its genus."
    command_name = "genus"

    def add_arguments(self, parser):
        parser.add_argument("path", help="Scheme file.")
        self.add_json_argument(parser)

    def run(self, config):
        faces = trace_faces(parse_scheme(self.read_input(config["path"])))
        if config["json"]:
            self.write_json(FaceReportSerializer(faces).data)
        else:
            self.write_lines(face_rows(faces))
