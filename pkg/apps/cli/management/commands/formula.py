from apps.cli.base import EmbeddingCommand
from apps.cli.serializers import FormulaRowSerializer
from apps.levi.hypergraph import HypergraphSpec, count_all_embeddings, formula_row


def _value(value, note):
    if value is not None:
        return value
    return note or "-"


class Command(EmbeddingCommand):
    help = "Prints the Euler-genus lower bound and the minimum genera of mK_n^3."
    command_name = "formula"

    def add_arguments(self, parser):
        self.add_order_arguments(parser)
        parser.add_argument(
            "--all-embeddings", action="store_true",
            help="Also print the number of 2-cell embeddings of the Levi graph.",
        )
        self.add_json_argument(parser)

    def run(self, config):
        n, m = config["n"], config["multiplicity"]
        row = formula_row(n, m)
        if config["all_embeddings"]:
            row["all_embeddings"] = str(count_all_embeddings(HypergraphSpec(n=n, m=m)))

        if config["json"]:
            self.write_json(FormulaRowSerializer(row).data)
            return
        rows = [
            ("n", n),
            ("m", m),
            ("euler genus lower bound", row["euler_genus_lower_bound"]),
            ("orientable genus", _value(row["orientable_genus"], row["note"])),
            ("non-orientable genus", _value(row["nonorientable_genus"], row["note"])),
        ]
        if "all_embeddings" in row:
            rows.append(("all embeddings", row["all_embeddings"]))
        self.write_lines(rows)
