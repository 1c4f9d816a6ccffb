from apps.census.bounds import count_lower_bound, count_upper_bound
from apps.census.canonical import canonicalize
from apps.census.enumeration import run_census, write_census
from apps.cli.base import EmbeddingCommand
from apps.cli.reports import yes_no
from apps.cli.serializers import CensusReportSerializer
from utils.exceptions import BudgetExhausted


class Command(EmbeddingCommand):
    help = "Collects pairwise-inequivalent minimum-genus embedding sets of K_n^3 into a census file."
    command_name = "enumerate"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, help="Order of the hypergraph.")
        self.add_orientation_arguments(parser)
        parser.add_argument("--count", type=int, help="Number of classes to collect.")
        parser.add_argument("--seed", type=int, default=0, help="Census seed (default 0).")
        parser.add_argument("--out", help="Write the census file here instead of stdout.")
        self.add_json_argument(parser)

    def run(self, config):
        n, orientable, count = config["n"], config["orientable"], config["count"]
        seed = config.get("seed") or 0
        run, found = run_census(n, orientable=orientable, count=count, seed=seed)

        out = config.get("out")
        if out or not config["json"]:
            self.write_output(out, write_census(found))

        report = {
            "n": n,
            "orientable": orientable,
            "seed": seed,
            "requested": count,
            "found": len(found),
            "samples": run.samples,
            "exhausted": len(found) < count,
            "count_lower_bound": str(count_lower_bound(n)),
            "count_upper_bound": str(count_upper_bound(n)),
            "digests": [canonicalize(s).digest for s in found],
        }
        if config["json"]:
            self.write_json(CensusReportSerializer(report).data)
        else:
            self.write_lines([
                ("n", n),
                ("orientable", yes_no(orientable)),
                ("classes", f"{len(found)} of {count}"),
                ("samples", run.samples),
                ("count lower bound", report["count_lower_bound"]),
                ("count upper bound", report["count_upper_bound"]),
            ], self.stdout if out else self.stderr)
        if report["exhausted"]:
            self.stderr.write(f"sampling budget exhausted: {len(found)} of {count} classes written")
            raise BudgetExhausted(f"found {len(found)} of {count} classes", found=found)
