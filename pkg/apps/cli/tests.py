import json
import re
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from apps.builder.fixtures import DATA_DIR, base_set
from apps.builder.formats import format_embedding_set
from apps.census.enumeration import read_census
from apps.scheme.embedding import set_to_scheme
from apps.scheme.formats import format_scheme

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def golden(name):
    return (FIXTURES / name).read_text(encoding="utf-8")


def report(text):
    """`label  value` lines as a dict."""
    rows = {}
    for line in text.splitlines():
        label, _, value = re.split(r"(\s{2,})", line, maxsplit=1)
        rows[label] = value
    return rows


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.tmp = Path(directory.name)

    def call(self, *args, **options):
        stdout, stderr = StringIO(), StringIO()
        call_command(*args, stdout=stdout, stderr=stderr, **options)
        return stdout.getvalue(), stderr.getvalue()

    def assertExitCode(self, code, *args, **options):
        with self.assertRaises(CommandError) as raised:
            self.call(*args, **options)
        self.assertEqual(raised.exception.returncode, code)
        return str(raised.exception)


### FORMULA

class FormulaCommandTest(CommandTestCase):
    def test_golden_tables(self):
        for n, fixture in [(6, "formula_6.txt"), (7, "formula_7.txt"), (12, "formula_12.txt")]:
            stdout, _ = self.call("formula", n=n)
            self.assertEqual(stdout, golden(fixture), fixture)

    def test_all_embeddings(self):
        stdout, _ = self.call("formula", n=4, all_embeddings=True)
        self.assertEqual(stdout, golden("formula_4_all.txt"))

    def test_json(self):
        stdout, _ = self.call("formula", n=10, json=True)
        row = json.loads(stdout)
        self.assertEqual(row["orientable_genus"], 26)
        self.assertEqual(row["nonorientable_genus"], 52)

    def test_multiplicity(self):
        stdout, _ = self.call("formula", n=4, multiplicity=2)
        self.assertEqual(report(stdout)["non-orientable genus"], "2")

    def test_usage_errors(self):
        self.assertExitCode(2, "formula")
        self.assertExitCode(2, "formula", n=3)


### BUILD

class BuildCommandTest(CommandTestCase):
    def test_orientable_k8(self):
        out = self.tmp / "k8.txt"
        stdout, _ = self.call("build", n=8, orientable=True, out=str(out))
        rows = report(stdout)
        self.assertEqual(rows["genus"], "11")
        self.assertEqual(rows["face lengths"], "4x84")
        self.assertEqual(rows["orientable"], "yes")

        verified, _ = self.call("verify", str(out), strict_strong=True)
        self.assertEqual(report(verified)["genus"], "11")

    def test_nonorientable_k6(self):
        stdout, _ = self.call("build", n=6, nonorientable=True, out=str(self.tmp / "k6.txt"))
        self.assertEqual(report(stdout)["crosscap"], "6")

    def test_klein_bottle(self):
        stdout, _ = self.call("build", n=4, multiplicity=2, nonorientable=True, out=str(self.tmp / "k4.txt"))
        rows = report(stdout)
        self.assertEqual(rows["crosscap"], "2")
        self.assertEqual(rows["euler genus"], "2")

    def test_set_on_stdout_report_on_stderr(self):
        stdout, stderr = self.call("build", n=6)
        self.assertTrue(stdout.startswith("# kn3-embedding-set v1\nn=6 m=1 orientable=1\n"))
        self.assertEqual(report(stderr)["genus"], "3")

    def test_scheme_out(self):
        scheme = self.tmp / "k6.scheme"
        self.call("build", n=6, out=str(self.tmp / "k6.txt"), scheme_out=str(scheme))
        stdout, _ = self.call("genus", str(scheme))
        self.assertEqual(stdout, golden("genus_orientable_6.txt"))

    def test_json(self):
        stdout, _ = self.call("build", n=6, seed=4, json=True)
        data = json.loads(stdout)
        self.assertEqual(data["faces"]["face_count"], 30)
        self.assertEqual(data["faces"]["histogram"], {"4": 30})
        self.assertTrue(data["orientable"])

    def test_errors(self):
        self.assertExitCode(2, "build", n=5)
        self.assertExitCode(2, "build", n=4, nonorientable=True)
        self.assertExitCode(2, "build", n=6, orientable=True, nonorientable=True)
        self.assertExitCode(2, "build")


### VERIFY

class VerifyCommandTest(CommandTestCase):
    def test_strong_set(self):
        stdout, _ = self.call("verify", str(DATA_DIR / "orientable_6.txt"))
        self.assertEqual(stdout, golden("verify_orientable_6.txt"))

    def test_nonstrong_set(self):
        stdout, _ = self.call("verify", str(DATA_DIR / "nonorientable_6.txt"))
        rows = report(stdout)
        self.assertTrue(rows["strong"].startswith("no (mixed pairs"))
        self.assertIn("(3,5)", rows["strong"])
        self.assertEqual(rows["crosscap"], "6")

    def test_strict_strong(self):
        message = self.assertExitCode(1, "verify", str(DATA_DIR / "nonorientable_6.txt"), strict_strong=True)
        self.assertIn("(3,5)", message)

    def test_klein_bottle(self):
        stdout, _ = self.call("verify", str(DATA_DIR / "multi_nonorientable_4.txt"))
        self.assertEqual(report(stdout)["crosscap"], "2")

    def test_broken_circuit(self):
        embedding_set = base_set("orientable_6")
        circuits = list(embedding_set.circuits)
        circuits[0] = circuits[0].with_seq((3, 2, 4, 5, 3, 6, 4, 5, 6, 2))
        path = self.tmp / "broken.txt"
        path.write_text(format_embedding_set(embedding_set.replace(circuits=circuits)))
        message = self.assertExitCode(1, "verify", str(path))
        self.assertIn("T 1", message)

    def test_parse_error(self):
        lines = (DATA_DIR / "orientable_6.txt").read_text().splitlines()
        lines[3] = "T 2: 1 x 4"
        path = self.tmp / "corrupt.txt"
        path.write_text("\n".join(lines) + "\n")
        message = self.assertExitCode(2, "verify", str(path))
        self.assertIn("line 4", message)

    def test_scheme_input(self):
        path = self.tmp / "k6.scheme"
        path.write_text(format_scheme(set_to_scheme(base_set("nonorientable_6"))))
        stdout, _ = self.call("verify", str(path), format="scheme", json=True)
        data = json.loads(stdout)
        self.assertTrue(data["ok"])
        self.assertFalse(data["strong"])
        self.assertIn([3, 5], data["mixed_pairs"])

    def test_missing_file(self):
        self.assertExitCode(2, "verify", str(self.tmp / "absent.txt"))


### GENUS

class GenusCommandTest(CommandTestCase):
    def write_scheme(self, scheme):
        path = self.tmp / "input.scheme"
        path.write_text(format_scheme(scheme))
        return str(path)

    def test_planar(self):
        stdout, _ = self.call("genus", self.write_scheme(set_to_scheme(base_set("orientable_4"))))
        self.assertEqual(stdout, golden("genus_planar_4.txt"))

    def test_mixed_face_lengths(self):
        scheme = set_to_scheme(base_set("orientable_4"))
        rotation = dict(scheme.rotation)
        rotation[1] = rotation[1][::-1]
        stdout, _ = self.call("genus", self.write_scheme(scheme.replace(rotation=rotation)))
        self.assertIn("12x", report(stdout)["face lengths"])

    def test_json(self):
        stdout, _ = self.call("genus", self.write_scheme(set_to_scheme(base_set("nonorientable_6"))), json=True)
        data = json.loads(stdout)
        self.assertEqual(data["euler_genus"], 6)
        self.assertFalse(data["orientable"])
        self.assertEqual(data["genus"], 6)

    def test_unknown_version(self):
        path = self.tmp / "future.scheme"
        path.write_text("# kn3-scheme v2\n")
        self.assertExitCode(2, "genus", str(path))


### ENUMERATE

class EnumerateCommandTest(TestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.tmp = Path(directory.name)

    def call(self, *args, **options):
        stdout, stderr = StringIO(), StringIO()
        call_command(*args, stdout=stdout, stderr=stderr, **options)
        return stdout.getvalue(), stderr.getvalue()

    def test_k6_lower_bound(self):
        out = self.tmp / "census.txt"
        stdout, _ = self.call("enumerate", n=6, count=6, seed=1, out=str(out))
        rows = report(stdout)
        self.assertEqual(rows["classes"], "6 of 6")
        self.assertEqual(rows["count lower bound"], "6")
        self.assertEqual(rows["count upper bound"], "14348907")
        self.assertEqual(len(read_census(out.read_text())), 6)

    def test_rerun_is_byte_identical(self):
        first, second = self.tmp / "first.txt", self.tmp / "second.txt"
        self.call("enumerate", n=6, count=4, seed=2, out=str(first))
        self.call("enumerate", n=6, count=4, seed=2, out=str(second))
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_census_on_stdout(self):
        stdout, stderr = self.call("enumerate", n=6, count=2, seed=3)
        self.assertTrue(stdout.startswith("# kn3-census v1\ndigest sha256:"))
        self.assertEqual(report(stderr)["classes"], "2 of 2")

    @override_settings(KN3_SAMPLING_BUDGET_FACTOR=3)
    def test_budget_exhausted_writes_partial_census(self):
        out = self.tmp / "partial.txt"
        text = format_embedding_set(base_set("orientable_6"))
        with patch("apps.census.enumeration.build_variant") as task:
            task.delay.return_value.get.return_value = text
            with self.assertRaises(CommandError) as raised:
                self.call("enumerate", n=6, count=2, seed=9, out=str(out))
        self.assertEqual(raised.exception.returncode, 1)
        self.assertEqual(len(read_census(out.read_text())), 1)

    def test_usage_errors(self):
        for options in ({"n": 6}, {"n": 7, "count": 1}, {"n": 4, "count": 1, "nonorientable": True}):
            with self.assertRaises(CommandError) as raised:
                self.call("enumerate", **options)
            self.assertEqual(raised.exception.returncode, 2, options)
