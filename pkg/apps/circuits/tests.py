from collections import Counter

from django.test import SimpleTestCase

from hypothesis import given, settings, strategies as st

from apps.builder.fixtures import base_set
from utils.exceptions import FormatError, MismatchedAmbient, VertexAbsent

from .circuits import (
    Circuit,
    Transition,
    enumerate_eulerian_circuits,
    equivalent,
    format_circuit_line,
    is_compatible,
    is_embedding_set,
    is_strongly_compatible,
    orient_strongly,
    parse_circuit_line,
    transitions_through,
    validate_eulerian,
)

FIXTURE_KINDS = ["orientable_4", "orientable_6", "nonorientable_6", "multi_nonorientable_4"]


### CIRCUIT TESTS

class CircuitTest(SimpleTestCase):
    def setUp(self):
        self.t1 = Circuit(excluded=1, n=6, seq=(3, 4, 2, 5, 3, 6, 4, 5, 6, 2))

    def test_equality_is_up_to_rotation(self):
        self.assertEqual(self.t1, self.t1.rotate(3))
        self.assertEqual(hash(self.t1), hash(self.t1.rotate(7)))
        self.assertNotEqual(self.t1, self.t1.reverse())

    def test_reversal_equivalence(self):
        self.assertTrue(equivalent(self.t1, self.t1.reverse().rotate(4)))

    def test_relabel(self):
        swapped = self.t1.relabel({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
        self.assertEqual(swapped.excluded, 2)
        self.assertEqual(swapped.seq[2], 1)

    def test_text_line(self):
        line = format_circuit_line(self.t1)
        self.assertEqual(line, "T 1: 3 4 2 5 3 6 4 5 6 2")
        self.assertEqual(parse_circuit_line(line, n=6), self.t1)

    def test_bad_line(self):
        with self.assertRaises(FormatError):
            parse_circuit_line("T 1 3 4 2", n=6, lineno=3)
        with self.assertRaises(FormatError):
            parse_circuit_line("T 1: 3 x 2", n=6, lineno=3)


class ValidateEulerianTest(SimpleTestCase):
    def test_printed_circuit_is_valid(self):
        report = validate_eulerian(Circuit(excluded=1, n=6, seq=(3, 4, 2, 5, 3, 6, 4, 5, 6, 2)))
        self.assertTrue(report.ok)

    def test_duplicated_pair(self):
        report = validate_eulerian(Circuit(excluded=1, n=6, seq=(3, 4, 3, 5, 2, 6, 4, 2, 5, 6)))
        self.assertFalse(report.ok)
        self.assertEqual(report.pair, (3, 4))
        self.assertEqual(report.count, 2)
        self.assertEqual(report.expected, 1)

    def test_multigraph_circuit(self):
        report = validate_eulerian(Circuit(excluded=1, n=4, m=2, seq=(3, 2, 4, 2, 3, 4)))
        self.assertTrue(report.ok)

    def test_excluded_vertex(self):
        report = validate_eulerian(Circuit(excluded=1, n=4, seq=(2, 1, 3)))
        self.assertFalse(report.ok)
        self.assertIn("excluded", report.message)

    def test_immediate_repetition(self):
        report = validate_eulerian(Circuit(excluded=1, n=4, seq=(2, 2, 3, 4)))
        self.assertFalse(report.ok)

    def test_missing_pair(self):
        report = validate_eulerian(Circuit(excluded=1, n=6, seq=(2, 3, 4, 5, 6)))
        self.assertFalse(report.ok)
        self.assertEqual(report.count, 0)


### TRANSITION TESTS

class TransitionsThroughTest(SimpleTestCase):
    def setUp(self):
        self.t1 = base_set("orientable_6").circuit(1)

    def test_printed_examples(self):
        self.assertEqual(transitions_through(self.t1, 2), Counter({Transition(4, 2, 5): 1, Transition(6, 2, 3): 1}))
        self.assertEqual(transitions_through(self.t1, 6), Counter({Transition(3, 6, 4): 1, Transition(5, 6, 2): 1}))

    def test_absent_vertex(self):
        with self.assertRaises(VertexAbsent):
            transitions_through(self.t1, 1)

    def test_cardinality(self):
        for kind in FIXTURE_KINDS:
            embedding_set = base_set(kind)
            expected = embedding_set.m * (embedding_set.n - 2) // 2
            for circuit in embedding_set:
                for j in range(1, embedding_set.n + 1):
                    if j != circuit.excluded:
                        self.assertEqual(sum(transitions_through(circuit, j).values()), expected)


class CompatibilityTest(SimpleTestCase):
    def setUp(self):
        self.strong = base_set("orientable_6")
        self.weak = base_set("nonorientable_6")

    def test_compatible_pairs(self):
        self.assertTrue(is_compatible(self.weak.circuit(3), self.weak.circuit(5)))
        self.assertTrue(is_compatible(self.strong.circuit(1), self.strong.circuit(2)))

    def test_strong_pairs(self):
        self.assertTrue(is_strongly_compatible(self.strong.circuit(1), self.strong.circuit(2)))
        self.assertFalse(is_strongly_compatible(self.weak.circuit(3), self.weak.circuit(5)))
        self.assertFalse(is_strongly_compatible(self.weak.circuit(3).reverse(), self.weak.circuit(5)))

    def test_same_excluded_vertex(self):
        t = self.strong.circuit(1)
        with self.assertRaises(MismatchedAmbient):
            is_compatible(t, t.reverse())

    def test_different_ambient(self):
        with self.assertRaises(MismatchedAmbient):
            is_compatible(self.strong.circuit(1), base_set("orientable_4").circuit(2))

    def test_symmetry_and_reversal(self):
        for embedding_set in (self.strong, self.weak):
            for t_i in embedding_set:
                for t_j in embedding_set:
                    if t_i.excluded == t_j.excluded:
                        continue
                    self.assertEqual(is_compatible(t_i, t_j), is_compatible(t_j, t_i))
                    self.assertEqual(is_compatible(t_i, t_j), is_compatible(t_i.reverse(), t_j))
                    self.assertEqual(is_strongly_compatible(t_i, t_j), is_strongly_compatible(t_j, t_i))
                    self.assertEqual(
                        is_strongly_compatible(t_i, t_j),
                        is_strongly_compatible(t_i.reverse(), t_j.reverse()),
                    )
                    if is_strongly_compatible(t_i, t_j):
                        self.assertTrue(is_compatible(t_i, t_j))

    @given(st.sampled_from(FIXTURE_KINDS), st.integers(min_value=0, max_value=40), st.integers(min_value=0, max_value=40))
    @settings(max_examples=40, deadline=None)
    def test_rotation_changes_nothing(self, kind, shift_i, shift_j):
        embedding_set = base_set(kind)
        t_i, t_j = embedding_set.circuit(1), embedding_set.circuit(2)
        self.assertEqual(is_compatible(t_i, t_j), is_compatible(t_i.rotate(shift_i), t_j.rotate(shift_j)))
        self.assertEqual(
            is_strongly_compatible(t_i, t_j),
            is_strongly_compatible(t_i.rotate(shift_i), t_j.rotate(shift_j)),
        )
        self.assertEqual(transitions_through(t_i, 3), transitions_through(t_i.rotate(shift_i), 3))


### EMBEDDING SET TESTS

class IsEmbeddingSetTest(SimpleTestCase):
    def test_strong_set(self):
        report = is_embedding_set(base_set("orientable_6"), require_strong=True)
        self.assertTrue(report.ok)
        self.assertTrue(report.strong)

    def test_nonstrong_set(self):
        weak = base_set("nonorientable_6")
        self.assertTrue(is_embedding_set(weak).ok)
        report = is_embedding_set(weak, require_strong=True)
        self.assertFalse(report.ok)
        self.assertTrue(report.compatible)
        self.assertIn((3, 5), report.mixed_pairs)

    def test_multigraph_set(self):
        report = is_embedding_set(base_set("multi_nonorientable_4"))
        self.assertTrue(report.ok)
        self.assertFalse(report.strong)

    def test_planar_set(self):
        self.assertTrue(is_embedding_set(base_set("orientable_4"), require_strong=True).ok)

    def test_strength_is_decided_up_to_reversal(self):
        flipped = base_set("orientable_6").reverse_circuits([2, 5])
        self.assertTrue(is_embedding_set(flipped, require_strong=True).ok)
        restored = orient_strongly(flipped)
        for t_i in restored:
            for t_j in restored:
                if t_i.excluded < t_j.excluded:
                    self.assertTrue(is_strongly_compatible(t_i, t_j))
        self.assertIsNone(orient_strongly(base_set("nonorientable_6")))

    def test_broken_circuit_is_reported(self):
        embedding_set = base_set("orientable_6")
        circuits = list(embedding_set.circuits)
        circuits[2] = circuits[2].with_seq((1, 2, 4, 5, 6, 2, 5, 1, 6, 4))
        report = is_embedding_set(embedding_set.replace(circuits=circuits))
        self.assertFalse(report.ok)
        self.assertTrue(report.eulerian)
        self.assertFalse(report.compatible)
        self.assertEqual(report.failing_pair, (3, 4))

    def test_non_eulerian_circuit_is_reported(self):
        embedding_set = base_set("orientable_6")
        circuits = list(embedding_set.circuits)
        circuits[2] = circuits[2].with_seq((1, 2, 4, 6, 1, 5, 2, 6, 4, 5))
        report = is_embedding_set(embedding_set.replace(circuits=circuits))
        self.assertFalse(report.ok)
        self.assertFalse(report.eulerian)
        self.assertEqual(report.failing_circuit, 3)
        self.assertIsNone(report.failing_pair)

    def test_wrong_circuit_count(self):
        embedding_set = base_set("orientable_4")
        report = is_embedding_set(embedding_set.replace(circuits=embedding_set.circuits[:3]))
        self.assertFalse(report.ok)


class EnumerateCircuitsTest(SimpleTestCase):
    def test_triangle(self):
        circuits = list(enumerate_eulerian_circuits(4, 1))
        self.assertEqual(len(circuits), 2)
        self.assertTrue(equivalent(circuits[0], circuits[1]))

    def test_no_circuit_for_odd_degrees(self):
        self.assertEqual(list(enumerate_eulerian_circuits(5, 1)), [])

    def test_outputs_are_eulerian_and_distinct(self):
        circuits = list(enumerate_eulerian_circuits(6, 6))
        self.assertTrue(circuits)
        self.assertEqual(len(set(circuits)), len(circuits))
        for circuit in circuits[:50]:
            self.assertTrue(validate_eulerian(circuit).ok)
