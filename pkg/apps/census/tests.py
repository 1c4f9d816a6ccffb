from unittest.mock import patch

from django.test import SimpleTestCase, TestCase, override_settings

from hypothesis import given, settings, strategies as st

from apps.builder.fixtures import base_set
from apps.builder.formats import format_embedding_set
from apps.builder.induction import build_even, relabel_set
from apps.circuits.circuits import orient_strongly
from apps.scheme.embedding import minimum_genus_failure
from utils.exceptions import (
    BoundExceeded,
    BudgetExhausted,
    FormatError,
    InvalidSpec,
    MismatchedAmbient,
    OddOrder,
    UnknownFormatVersion,
)

from .bounds import count_lower_bound, count_lower_bound_product, count_upper_bound, isomorphism_lower_bound
from .canonical import canonicalize, sets_isomorphic
from .enumeration import enumerate_variants, exhaustive_classes, read_census, run_census, sample_seed, write_census
from .models import CensusRecord, CensusRun


def digests(embedding_sets):
    return [canonicalize(s).digest for s in embedding_sets]


### CANONICAL FORMS

class CanonicalizeTest(SimpleTestCase):
    def setUp(self):
        self.embedding_set = base_set("orientable_6")

    @given(st.data())
    @settings(max_examples=50, deadline=None)
    def test_rotation_and_reversal_invariance(self, data):
        circuits = []
        for circuit in self.embedding_set:
            moved = circuit.rotate(data.draw(st.integers(0, len(circuit) - 1)))
            circuits.append(moved.reverse() if data.draw(st.booleans()) else moved)
        self.assertEqual(canonicalize(self.embedding_set.replace(circuits=circuits)), canonicalize(self.embedding_set))

    def test_idempotent(self):
        form = canonicalize(self.embedding_set)
        self.assertEqual(canonicalize(form.embedding_set()), form)
        self.assertEqual(canonicalize(form.embedding_set()).text, form.text)

    def test_strong_and_nonstrong_differ(self):
        self.assertNotEqual(canonicalize(self.embedding_set), canonicalize(base_set("nonorientable_6")))

    def test_digest(self):
        form = canonicalize(self.embedding_set)
        self.assertTrue(form.digest.startswith("sha256:"))
        self.assertEqual(len(form.digest), len("sha256:") + 64)
        self.assertEqual(form.digest, canonicalize(self.embedding_set.reverse_circuits([1, 4])).digest)


class SetsIsomorphicTest(SimpleTestCase):
    def setUp(self):
        self.embedding_set = base_set("orientable_6")
        self.relabelled = relabel_set(self.embedding_set, (4, 6, 1, 5, 2, 3))

    def test_identity(self):
        self.assertEqual(sets_isomorphic(self.embedding_set, self.embedding_set), {i: i for i in range(1, 7)})

    def test_relabelling_found(self):
        sigma = sets_isomorphic(self.embedding_set, self.relabelled)
        self.assertIsNotNone(sigma)
        self.assertEqual(canonicalize(relabel_set(self.embedding_set, sigma)), canonicalize(self.relabelled))

    def test_inverse(self):
        tau = sets_isomorphic(self.relabelled, self.embedding_set)
        self.assertIsNotNone(tau)
        self.assertEqual(canonicalize(relabel_set(self.relabelled, tau)), canonicalize(self.embedding_set))

    def test_orientability_is_invariant(self):
        self.assertIsNone(sets_isomorphic(build_even(6), base_set("nonorientable_6")))

    def test_mismatched_ambient(self):
        with self.assertRaises(MismatchedAmbient):
            sets_isomorphic(base_set("orientable_4"), self.embedding_set)

    @override_settings(KN3_ISOMORPHISM_MAX_ORDER=4)
    def test_bound(self):
        with self.assertRaises(BoundExceeded):
            sets_isomorphic(self.embedding_set, self.relabelled)


### BOUNDS

class BoundsTest(SimpleTestCase):
    def test_lower_bound(self):
        self.assertEqual(count_lower_bound(4), 1)
        self.assertEqual(count_lower_bound(6), 6)
        self.assertEqual(count_lower_bound(8), 2880)
        self.assertEqual(count_lower_bound(10), 195955200)

    def test_product_form_agrees(self):
        for n in range(4, 21, 2):
            self.assertEqual(count_lower_bound_product(n), count_lower_bound(n), n)

    def test_upper_bound(self):
        self.assertEqual(count_upper_bound(4), 1)
        self.assertEqual(count_upper_bound(6), 3 ** 15)
        self.assertEqual(count_upper_bound(6), 14348907)
        self.assertEqual(count_upper_bound(8), 15 ** 28)

    def test_bounds_are_ordered(self):
        for n in range(4, 17, 2):
            self.assertLessEqual(count_lower_bound(n), count_upper_bound(n), n)

    def test_isomorphism_lower_bound(self):
        self.assertEqual(isomorphism_lower_bound(6), 1)
        self.assertEqual(isomorphism_lower_bound(10), 54)

    def test_bad_orders(self):
        with self.assertRaises(OddOrder):
            count_lower_bound(7)
        with self.assertRaises(InvalidSpec):
            count_upper_bound(2)


class ExhaustiveTest(SimpleTestCase):
    def test_planar_k4_is_unique(self):
        self.assertEqual(exhaustive_classes(4), count_upper_bound(4))

    def test_bound(self):
        with self.assertRaises(BoundExceeded):
            exhaustive_classes(8)
        with self.assertRaises(OddOrder):
            exhaustive_classes(5)


### ENUMERATION

class EnumerateVariantsTest(SimpleTestCase):
    def test_k6_reaches_lower_bound(self):
        found = enumerate_variants(6, orientable=True, count=count_lower_bound(6), seed=1)
        self.assertEqual(len(found), 6)
        self.assertEqual(len(set(digests(found))), 6)
        for embedding_set in found:
            self.assertIsNone(minimum_genus_failure(embedding_set, orientable=True))

    def test_k8_variants_are_minimum(self):
        found = enumerate_variants(8, orientable=True, count=5, seed=3)
        self.assertEqual(len(set(digests(found))), 5)
        for embedding_set in found:
            self.assertIsNone(minimum_genus_failure(embedding_set, orientable=True))

    def test_k8_hundred_classes(self):
        found = enumerate_variants(8, orientable=True, count=100, seed=1)
        self.assertEqual(len(found), 100)
        self.assertEqual(len(set(digests(found))), 100)
        self.assertTrue(all(embedding_set.n == 8 for embedding_set in found))

    def test_nonorientable_variants(self):
        found = enumerate_variants(8, orientable=False, count=3, seed=2)
        self.assertEqual(len(set(digests(found))), 3)
        for embedding_set in found:
            self.assertIsNone(minimum_genus_failure(embedding_set, orientable=False))

    def test_deterministic(self):
        first = write_census(enumerate_variants(6, count=4, seed=7))
        second = write_census(enumerate_variants(6, count=4, seed=7))
        self.assertEqual(first, second)

    @override_settings(KN3_SAMPLING_BUDGET_FACTOR=5, KN3_ENUMERATION_BATCH=4)
    def test_budget_exhausted(self):
        text = format_embedding_set(orient_strongly(base_set("orientable_6")))
        with patch("apps.census.enumeration.build_variant") as task:
            task.delay.return_value.get.return_value = text
            with self.assertRaises(BudgetExhausted) as raised:
                enumerate_variants(6, count=2, seed=1)
        self.assertEqual(len(raised.exception.found), 1)
        self.assertEqual(task.delay.call_count, 10)
        task.delay.assert_any_call(6, True, sample_seed(1, 0))

    def test_failed_builds_are_skipped(self):
        text = format_embedding_set(orient_strongly(base_set("orientable_6")))
        with patch("apps.census.enumeration.build_variant") as task:
            task.delay.return_value.get.side_effect = [None, None, text]
            found = enumerate_variants(6, count=1, seed=1)
        self.assertEqual(digests(found), digests([base_set("orientable_6")]))

    def test_rejects_odd_order(self):
        with self.assertRaises(OddOrder):
            enumerate_variants(7, count=1)


class RunCensusTest(TestCase):
    def test_resume_continues_the_same_sequence(self):
        run, partial = run_census(6, orientable=True, count=3, seed=1)
        self.assertEqual(run.found, 3)
        self.assertEqual(CensusRecord.objects.filter(run=run).count(), 3)
        first_samples = run.samples

        run, full = run_census(6, orientable=True, count=6, seed=1)
        self.assertEqual(CensusRun.objects.count(), 1)
        self.assertEqual(run.found, 6)
        self.assertFalse(run.exhausted)
        self.assertGreaterEqual(run.samples, first_samples)
        self.assertEqual(digests(full[:3]), digests(partial))
        self.assertEqual(digests(full), digests(enumerate_variants(6, count=6, seed=1)))
        self.assertEqual(list(run.records.values_list("position", flat=True)), list(range(6)))

    def test_stored_run_needs_no_builds(self):
        run_census(6, count=2, seed=5)
        with patch("apps.census.enumeration.build_variant") as task:
            run, found = run_census(6, count=2, seed=5)
        task.delay.assert_not_called()
        self.assertEqual(len(found), 2)
        self.assertEqual(run.requested, 2)


### CENSUS FILE

class CensusFileTest(SimpleTestCase):
    def setUp(self):
        self.sets = [base_set("orientable_6"), base_set("nonorientable_6")]
        self.text = write_census(self.sets)

    def test_round_trip(self):
        parsed = read_census(self.text)
        self.assertEqual(digests(parsed), digests(self.sets))
        self.assertEqual(write_census(parsed), self.text)

    def test_layout(self):
        lines = self.text.splitlines()
        self.assertEqual(lines[0], "# kn3-census v1")
        self.assertRegex(lines[1], r"^digest sha256:[0-9a-f]{64}$")
        self.assertEqual(lines[2], "# kn3-embedding-set v1")

    def test_digest_mismatch(self):
        lines = self.text.splitlines()
        tail = lines[1][-1]
        lines[1] = lines[1][:-1] + ("0" if tail != "0" else "1")
        with self.assertRaises(FormatError) as raised:
            read_census("\n".join(lines))
        self.assertEqual(raised.exception.line, 2)

    def test_unknown_version(self):
        with self.assertRaises(UnknownFormatVersion):
            read_census(self.text.replace("kn3-census v1", "kn3-census v9"))

    def test_record_errors_report_file_lines(self):
        lines = self.text.splitlines()
        lines[5] = "T 3: 1 2 x"
        with self.assertRaises(FormatError) as raised:
            read_census("\n".join(lines))
        self.assertEqual(raised.exception.line, 6)
