from collections import Counter

from django.test import SimpleTestCase

from apps.circuits.circuits import (
    Transition,
    is_embedding_set,
    is_strongly_compatible,
    orient_strongly,
    validate_eulerian,
)
from apps.levi.hypergraph import HypergraphSpec, genus_formula
from apps.scheme.embedding import set_to_scheme
from apps.scheme.faces import trace_faces
from utils.exceptions import FormatError, InvalidSpec, OddOrder, UnknownFormatVersion, UnsupportedCase
from utils.random_utils import make_rng

from .fixtures import base_set
from .formats import format_embedding_set, parse_embedding_set
from .induction import (
    TransitionChoice,
    build_apex_circuits,
    build_even,
    build_insertion,
    build_sigma,
    extend_by_two,
    random_choice,
    relabel_set,
)
from .multi import build_multi, splice


PRINTED_NONORIENTABLE_6 = """\
# kn3-embedding-set v1
n=6 m=1 orientable=0
T 1: 4 2 5 3 6 4 5 6 2 3
T 2: 4 6 5 1 4 3 1 6 3 5
T 3: 1 2 4 6 1 5 2 6 5 4
T 4: 5 1 6 2 5 6 3 2 1 3
T 5: 6 3 4 2 3 1 2 6 4 1
T 6: 2 1 5 3 2 5 4 3 1 4
"""


def transition_counter(circuit):
    return Counter(t for _, t in circuit.transitions())


def assert_minimum_genus(test, embedding_set, orientable):
    faces = trace_faces(set_to_scheme(embedding_set))
    spec = HypergraphSpec(n=embedding_set.n, m=embedding_set.m)
    test.assertTrue(faces.quadrilateral)
    test.assertEqual(faces.orientable, orientable)
    expected = genus_formula(spec, orientable=True) * 2
    test.assertEqual(faces.euler_genus, expected)
    return faces


### FIXTURES

class BaseSetTest(SimpleTestCase):
    def test_fixtures_are_embedding_sets(self):
        for kind, strong in [
            ("orientable_4", True),
            ("orientable_6", True),
            ("nonorientable_6", False),
            ("multi_nonorientable_4", False),
        ]:
            embedding_set = base_set(kind)
            report = is_embedding_set(embedding_set)
            self.assertTrue(report.ok, kind)
            self.assertEqual(report.strong, strong, kind)
            self.assertEqual(embedding_set.strong, strong, kind)

    def test_printed_circuits(self):
        self.assertEqual(base_set("nonorientable_6").circuit(3).seq, (1, 2, 4, 6, 1, 5, 2, 6, 5, 4))
        self.assertEqual(base_set("multi_nonorientable_4").circuit(1).seq, (3, 2, 4, 2, 3, 4))
        self.assertEqual(base_set("multi_nonorientable_4").m, 2)

    def test_printed_nonstrong_completion_is_rejected(self):
        report = is_embedding_set(parse_embedding_set(PRINTED_NONORIENTABLE_6))
        self.assertFalse(report.ok)
        self.assertTrue(report.eulerian)
        self.assertEqual(report.failing_pair, (2, 6))
        self.assertEqual(report.failing_transition, Transition(4, 6, 5))

    def test_stored_nonstrong_set_keeps_three_and_five_mixed(self):
        embedding_set = base_set("nonorientable_6")
        for k in (1, 2, 3):
            self.assertEqual(embedding_set.circuit(k), parse_embedding_set(PRINTED_NONORIENTABLE_6).circuit(k))
        self.assertIn((3, 5), is_embedding_set(embedding_set).mixed_pairs)

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            base_set("orientable_5")


class EmbeddingSetFormatTest(SimpleTestCase):
    def test_round_trip(self):
        text = format_embedding_set(base_set("nonorientable_6"))
        self.assertTrue(text.startswith("# kn3-embedding-set v1\nn=6 m=1 orientable=0\nT 1: 4 2 5 3 6"))
        self.assertEqual(format_embedding_set(parse_embedding_set(text)), text)

    def test_unknown_version(self):
        with self.assertRaises(UnknownFormatVersion):
            parse_embedding_set("# kn3-embedding-set v9\nn=4 m=1 orientable=1\n")

    def test_errors_carry_line_numbers(self):
        text = format_embedding_set(base_set("orientable_4")).replace("T 3: 4 1 2", "T 3: 4 one 2")
        with self.assertRaises(FormatError) as ctx:
            parse_embedding_set(text)
        self.assertEqual(ctx.exception.line, 5)
        self.assertIn("line 5", str(ctx.exception.detail))

    def test_missing_and_duplicate_circuits(self):
        lines = format_embedding_set(base_set("orientable_4")).splitlines()
        with self.assertRaises(FormatError):
            parse_embedding_set("\n".join(lines[:-1]))
        with self.assertRaises(FormatError):
            parse_embedding_set("\n".join(lines[:-1] + [lines[2]]))

    def test_bad_metadata(self):
        with self.assertRaises(FormatError):
            parse_embedding_set("# kn3-embedding-set v1\nn=4 orientable=1\n")


### INSERTION TRAILS

class SigmaTest(SimpleTestCase):
    def test_printed_permutations(self):
        self.assertEqual(build_sigma(1, 8), (3, 4, 5, 6, 7, 8))
        self.assertEqual(build_sigma(3, 8), (2, 1, 5, 6, 7, 8))
        self.assertEqual(build_sigma(7, 8), (2, 1, 4, 3, 6, 5))

    def test_parity(self):
        with self.assertRaises(InvalidSpec):
            build_sigma(2, 8)
        with self.assertRaises(OddOrder):
            build_sigma(1, 7)


class InsertionTest(SimpleTestCase):
    def test_printed_trails(self):
        self.assertEqual(str(build_insertion(1, 6)), "x,3,y,4,x,5,y,6,x,y,2")
        self.assertEqual(str(build_insertion(2, 6)), "y,3,x,4,y,5,x,6,y,x,1")
        self.assertTrue(str(build_insertion(5, 6)).endswith("x,y,6"))
        self.assertEqual(build_insertion(6, 6).anchor, 5)

    def test_covers_apex_edges_once(self):
        n = 8
        x, y = n + 1, n + 2
        for i in range(1, n + 1):
            insertion = build_insertion(i, n)
            walk = (insertion.anchor,) + insertion.trail
            pairs = Counter(frozenset(edge) for edge in zip(walk, walk[1:]))
            expected = {frozenset((apex, v)) for apex in (x, y) for v in range(1, n + 1) if v != i}
            expected.add(frozenset((x, y)))
            self.assertEqual(set(pairs), expected)
            self.assertTrue(all(count == 1 for count in pairs.values()))


class ApexCircuitTest(SimpleTestCase):
    def test_k6_apexes(self):
        apex_x, apex_y = build_apex_circuits(4)
        self.assertEqual(apex_x.seq, (6, 1, 4, 2, 3, 4, 6, 3, 1, 2))
        self.assertEqual(apex_y.seq, (5, 2, 4, 3, 5, 4, 1, 3, 2, 1))
        self.assertTrue(validate_eulerian(apex_x).ok)
        self.assertTrue(validate_eulerian(apex_y).ok)
        self.assertTrue(is_strongly_compatible(apex_x, apex_y))

    def test_first_subtrail_of_y(self):
        _, apex_y = build_apex_circuits(6)
        self.assertEqual(apex_y.seq[:5], (7, 2, 6, 5, 7))

    def test_linking_transitions(self):
        for n in (6, 8, 10):
            apex_x, apex_y = build_apex_circuits(n)
            x, y = n + 1, n + 2
            through_y = {t for _, t in apex_x.transitions() if t.mid == y}
            through_x = {t for _, t in apex_y.transitions() if t.mid == x}
            self.assertIn(Transition(2, y, 1), through_y)
            self.assertIn(Transition(1, x, 2), through_x)
            for i in range(3, n, 2):
                self.assertIn(Transition(n + 3 - i, y, i), through_y)
                self.assertIn(Transition(i, x, n + 3 - i), through_x)


### INDUCTION

class ExtendByTwoTest(SimpleTestCase):
    def setUp(self):
        self.base = orient_strongly(base_set("orientable_6"))

    def test_default_step(self):
        extended, broken = extend_by_two(self.base)
        report = is_embedding_set(extended, require_strong=True)
        self.assertTrue(report.ok, report.message)
        self.assertEqual(extended.n, 8)
        self.assertEqual(len(broken), 6)

    def test_splice_conservation(self):
        extended, broken = extend_by_two(self.base, TransitionChoice(picks=(1, 1, 0)))
        for old in self.base:
            lost = transition_counter(old) - transition_counter(extended.circuit(old.excluded))
            self.assertEqual(lost, Counter({broken[old.excluded]: 1}))
        # the pick is the second occurrence of 2 in T_1 = 3 4 2 5 3 6 4 5 6 2
        self.assertEqual(broken[1], Transition(6, 2, 3))
        self.assertEqual(broken[2], Transition(3, 1, 6))

    def test_matching_swaps_and_apex_exchange(self):
        choice = TransitionChoice(
            picks=(1, 0, 1),
            matching=((2, 5), (1, 6), (3, 4)),
            swaps=(True, False, True),
            swap_apex=True,
        )
        extended, broken = extend_by_two(self.base, choice)
        self.assertTrue(is_embedding_set(extended, require_strong=True).ok)
        self.assertEqual(broken[5].mid, 2)
        self.assertEqual(broken[2].mid, 5)
        assert_minimum_genus(self, extended, orientable=True)

    def test_bad_matching(self):
        with self.assertRaises(InvalidSpec):
            extend_by_two(self.base, TransitionChoice(matching=((1, 2), (3, 4), (5, 5))))


class BuildEvenTest(SimpleTestCase):
    def test_orientable_orders(self):
        for n, genus in [(4, 0), (6, 3), (8, 11), (10, 26)]:
            embedding_set = build_even(n)
            self.assertTrue(is_embedding_set(embedding_set, require_strong=True).ok)
            self.assertEqual(assert_minimum_genus(self, embedding_set, orientable=True).genus, genus)

    def test_orders_twelve_and_fourteen(self):
        for n, genus in [(12, 50), (14, 85)]:
            embedding_set = build_even(n)
            self.assertTrue(is_embedding_set(embedding_set, require_strong=True).ok)
            self.assertEqual(assert_minimum_genus(self, embedding_set, orientable=True).genus, genus)

    def test_order_sixteen(self):
        faces = assert_minimum_genus(self, build_even(16), orientable=True)
        self.assertEqual(faces.genus, 133)

    def test_nonorientable_orders(self):
        for n, crosscap in [(6, 6), (8, 22), (10, 52)]:
            embedding_set = build_even(n, orientable=False)
            report = is_embedding_set(embedding_set)
            self.assertTrue(report.ok)
            self.assertFalse(report.strong)
            self.assertEqual(assert_minimum_genus(self, embedding_set, orientable=False).genus, crosscap)

    def test_large_nonorientable_orders(self):
        for n, crosscap in [(12, 100), (14, 170), (16, 266)]:
            embedding_set = build_even(n, orientable=False)
            self.assertIn((3, 5), is_embedding_set(embedding_set).mixed_pairs)
            self.assertEqual(assert_minimum_genus(self, embedding_set, orientable=False).genus, crosscap)

    def test_nonorientable_pair_persists(self):
        for seed in range(5):
            for n in (8, 10):
                report = is_embedding_set(build_even(n, orientable=False, seed=seed))
                self.assertTrue(report.ok)
                self.assertTrue(report.compatible)
                self.assertIn((3, 5), report.mixed_pairs)

    def test_seeded_builds(self):
        for seed in (1, 2):
            embedding_set = build_even(10, seed=seed)
            self.assertTrue(is_embedding_set(embedding_set, require_strong=True).ok)
            assert_minimum_genus(self, embedding_set, orientable=True)

    def test_determinism(self):
        self.assertEqual(build_even(10, seed=7), build_even(10, seed=7))
        self.assertEqual(build_even(8, orientable=False, seed=3), build_even(8, orientable=False, seed=3))
        self.assertEqual(build_even(8), build_even(8))

    def test_errors(self):
        with self.assertRaises(OddOrder):
            build_even(7)
        with self.assertRaises(UnsupportedCase):
            build_even(4, orientable=False)
        with self.assertRaises(InvalidSpec):
            build_even(8, orientable=False, choice=TransitionChoice(matching=((3, 5), (1, 2), (4, 6))))


class RandomChoiceTest(SimpleTestCase):
    def test_nonorientable_draws_keep_three_and_five_apart(self):
        rng = make_rng(11)
        for _ in range(200):
            choice = random_choice(6, rng, orientable=False)
            self.assertFalse(choice.pairs_together(3, 5, 6))

    def test_draws_are_valid_matchings(self):
        rng = make_rng(5)
        for _ in range(20):
            choice = random_choice(8, rng)
            self.assertEqual(len(choice.pairs(8)), 4)
            self.assertEqual(sorted(choice.frame(8).values()), list(range(1, 11)))


class RelabelSetTest(SimpleTestCase):
    def test_relabelled_set_stays_valid(self):
        moved = relabel_set(base_set("orientable_6"), [2, 3, 1, 6, 4, 5])
        self.assertTrue(is_embedding_set(moved, require_strong=True).ok)
        self.assertEqual(moved.circuit(2).seq[:3], (1, 6, 3))

    def test_rejects_non_permutation(self):
        with self.assertRaises(InvalidSpec):
            relabel_set(base_set("orientable_4"), [1, 1, 2, 3])


### MULTIGRAPHS

class BuildMultiTest(SimpleTestCase):
    def test_klein_bottle(self):
        embedding_set = build_multi(4, 2, orientable=False)
        self.assertEqual(embedding_set, base_set("multi_nonorientable_4"))
        faces = assert_minimum_genus(self, embedding_set, orientable=False)
        self.assertEqual(faces.euler_genus, 2)

    def test_planar_base(self):
        faces = assert_minimum_genus(self, build_multi(4, 1), orientable=True)
        self.assertEqual(faces.genus, 0)

    def test_orientable_multigraphs(self):
        for n, m, genus in [(4, 2, 1), (4, 3, 2), (6, 2, 8), (6, 3, 13), (8, 2, 25), (8, 3, 39)]:
            embedding_set = build_multi(n, m)
            self.assertEqual(embedding_set.m, m)
            self.assertTrue(is_embedding_set(embedding_set, require_strong=True).ok)
            self.assertEqual(assert_minimum_genus(self, embedding_set, orientable=True).genus, genus)

    def test_nonorientable_multigraphs(self):
        for n, m, crosscap in [(4, 3, 4), (6, 2, 16), (8, 2, 50)]:
            embedding_set = build_multi(n, m, orientable=False)
            report = is_embedding_set(embedding_set)
            self.assertTrue(report.ok)
            self.assertFalse(report.strong)
            self.assertEqual(assert_minimum_genus(self, embedding_set, orientable=False).genus, crosscap)

    def test_splice_keeps_every_transition(self):
        guest = build_even(6)
        host = build_even(6)
        spliced = splice(host.circuit(1), guest.circuit(1), Transition(*host.circuit(1).transitions()[2][1]))
        self.assertEqual(
            transition_counter(spliced),
            transition_counter(host.circuit(1)) + transition_counter(guest.circuit(1)),
        )
        self.assertTrue(validate_eulerian(spliced).ok)

    def test_seeded_determinism(self):
        self.assertEqual(build_multi(6, 2, seed=4), build_multi(6, 2, seed=4))

    def test_errors(self):
        with self.assertRaises(OddOrder):
            build_multi(5, 2)
        with self.assertRaises(UnsupportedCase):
            build_multi(4, 1, orientable=False)
        with self.assertRaises(InvalidSpec):
            build_multi(6, 0)
