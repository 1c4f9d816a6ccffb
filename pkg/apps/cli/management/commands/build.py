from apps.builder.formats import format_embedding_set
from apps.builder.induction import build_even
from apps.builder.multi import build_multi
from apps.cli.base import EmbeddingCommand
from apps.cli.reports import face_rows, yes_no
from apps.cli.serializers import BuildReportSerializer
from apps.scheme.embedding import minimum_genus_failure, set_to_scheme
from apps.scheme.faces import trace_faces
from apps.scheme.formats import format_scheme
from utils.exceptions import NotAnEmbeddingSet


class Command(EmbeddingCommand):
    help = "Builds a verified minimum-genus embedding set of mK_n^3."
    command_name = "build"

    def add_arguments(self, parser):
        self.add_order_arguments(parser)
        self.add_orientation_arguments(parser)
        parser.add_argument("--seed", type=int, help="Draw the free transition choices from this seed.")
        parser.add_argument("--out", help="Write the embedding set here instead of stdout.")
        parser.add_argument("--scheme-out", help="Also write the embedding scheme here.")
        self.add_json_argument(parser)

    def run(self, config):
        n, m, orientable = config["n"], config["multiplicity"], config["orientable"]
        if m == 1:
            embedding_set = build_even(n, orientable=orientable, seed=config.get("seed"))
        else:
            embedding_set = build_multi(n, m, orientable=orientable, seed=config.get("seed"))

        failure = minimum_genus_failure(embedding_set, orientable)
        if failure:
            raise NotAnEmbeddingSet(f"build of n={n} m={m} did not verify: {failure}")
        scheme = set_to_scheme(embedding_set)
        faces = trace_faces(scheme)

        out = config.get("out")
        if out or not config["json"]:
            self.write_output(out, format_embedding_set(embedding_set))
        if config.get("scheme_out"):
            self.write_output(config["scheme_out"], format_scheme(scheme))

        if config["json"]:
            report = {
                "n": n,
                "m": m,
                "orientable": orientable,
                "faces": faces,
                "out": out,
                "scheme_out": config.get("scheme_out"),
            }
            self.write_json(BuildReportSerializer(report).data)
            return
        # the set itself went to stdout unless --out was given
        stream = self.stdout if out else self.stderr
        self.write_lines([("n", n), ("m", m), ("orientable", yes_no(orientable))] + face_rows(faces), stream)
