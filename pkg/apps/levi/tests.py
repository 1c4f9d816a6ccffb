from django.test import SimpleTestCase

import networkx as nx
from hypothesis import given, settings, strategies as st

from utils.exceptions import InvalidSpec, OddOrder, UnsupportedCase

from .hypergraph import (
    HypergraphSpec,
    TripleVertex,
    build_levi,
    count_all_embeddings,
    euler_genus_lower_bound,
    formula_row,
    genus_formula,
)


### HYPERGRAPH SPEC TESTS

class HypergraphSpecTest(SimpleTestCase):
    def test_derived_counts(self):
        spec = HypergraphSpec(n=6, m=2)
        self.assertEqual(spec.edge_count, 40)
        self.assertEqual(spec.levi_vertex_count, 46)
        self.assertEqual(spec.levi_edge_count, 120)

    def test_rejects_small_order(self):
        with self.assertRaises(InvalidSpec):
            HypergraphSpec(n=3)

    def test_rejects_zero_multiplicity(self):
        with self.assertRaises(InvalidSpec):
            HypergraphSpec(n=6, m=0)


### LEVI GRAPH TESTS

class BuildLeviTest(SimpleTestCase):
    def test_vertex_and_edge_counts(self):
        for n, m, vertices, edges in [(4, 1, 8, 12), (6, 1, 26, 60), (4, 2, 12, 24)]:
            levi = build_levi(HypergraphSpec(n=n, m=m))
            self.assertEqual(levi.vertex_count, vertices)
            self.assertEqual(levi.edge_count, edges)
            self.assertEqual(len(list(levi.edges())), edges)

    def test_degrees(self):
        levi = build_levi(HypergraphSpec(n=6, m=2))
        for x in levi.x_vertices:
            self.assertEqual(levi.degree(x), 2 * 10)
        for y in levi.y_vertices:
            self.assertEqual(levi.degree(y), 3)

    def test_triples_are_sorted_and_copies_indexed(self):
        levi = build_levi(HypergraphSpec(n=4, m=2))
        self.assertIn(TripleVertex((3, 1, 2), 1), levi.y_vertices)
        self.assertEqual(TripleVertex((3, 1, 2), 1).elements, (1, 2, 3))
        self.assertEqual({y.copy for y in levi.y_vertices}, {0, 1})

    def test_networkx_view_is_bipartite_and_connected(self):
        graph = build_levi(HypergraphSpec(n=6)).networkx
        self.assertTrue(nx.is_bipartite(graph))
        self.assertTrue(nx.is_connected(graph))

    def test_labels(self):
        self.assertEqual(TripleVertex((1, 2, 3)).label(), "e{1,2,3}")
        self.assertEqual(TripleVertex((1, 2, 3), 1).label(2), "e{1,2,3}#1")

    def test_copy_zero_is_labelled_in_multigraphs(self):
        levi = build_levi(HypergraphSpec(n=4, m=2))
        self.assertIn("e{1,2,3}#0", [str(y) for y in levi.y_vertices])
        self.assertEqual(str(build_levi(HypergraphSpec(n=4)).y_vertices[0]), "e{1,2,3}")
        self.assertEqual(TripleVertex((1, 2, 3), 0, 2), TripleVertex((1, 2, 3)))
        self.assertEqual(hash(TripleVertex((1, 2, 3), 0, 2)), hash(TripleVertex((1, 2, 3))))


### FORMULA TESTS

class LowerBoundTest(SimpleTestCase):
    def test_known_values(self):
        self.assertEqual(euler_genus_lower_bound(HypergraphSpec(n=4)), 0)
        self.assertEqual(euler_genus_lower_bound(HypergraphSpec(n=6)), 6)
        self.assertEqual(euler_genus_lower_bound(HypergraphSpec(n=5)), 2)
        self.assertEqual(euler_genus_lower_bound(HypergraphSpec(n=7)), 13)

    @given(st.integers(min_value=4, max_value=60))
    @settings(max_examples=60, deadline=None)
    def test_matches_closed_form_for_simple_hypergraphs(self, n):
        product = (n - 2) * (n + 3) * (n - 4)
        self.assertEqual(euler_genus_lower_bound(HypergraphSpec(n=n)), -(-product // 12))


class GenusFormulaTest(SimpleTestCase):
    def test_orientable_values(self):
        expected = {4: 0, 6: 3, 8: 11, 10: 26, 12: 50, 14: 85, 16: 133}
        for n, genus in expected.items():
            self.assertEqual(genus_formula(HypergraphSpec(n=n)), genus)

    def test_klein_bottle_case(self):
        self.assertEqual(genus_formula(HypergraphSpec(n=4, m=2), orientable=False), 2)

    def test_multi_edge_value(self):
        self.assertEqual(genus_formula(HypergraphSpec(n=6, m=3)), 13)

    def test_odd_order_rejected(self):
        with self.assertRaises(OddOrder):
            genus_formula(HypergraphSpec(n=7))

    def test_planar_nonorientable_rejected(self):
        with self.assertRaises(UnsupportedCase):
            genus_formula(HypergraphSpec(n=4), orientable=False)

    @given(st.integers(min_value=3, max_value=30), st.integers(min_value=1, max_value=5))
    @settings(max_examples=80, deadline=None)
    def test_bounds_are_tight_for_even_orders(self, half, m):
        spec = HypergraphSpec(n=2 * half, m=m)
        orientable = genus_formula(spec, orientable=True)
        self.assertEqual(genus_formula(spec, orientable=False), 2 * orientable)
        self.assertEqual(euler_genus_lower_bound(spec), 2 * orientable)


class CountAllEmbeddingsTest(SimpleTestCase):
    def test_k4(self):
        # (2!)^4 rotations at X, 2^4 at Y, 2^5 signatures
        self.assertEqual(count_all_embeddings(HypergraphSpec(n=4)), 16 * 16 * 32)

    def test_signature_exponent_is_cycle_rank(self):
        spec = HypergraphSpec(n=6)
        rotations = 9 * 8 * 7 * 6 * 5 * 4 * 3 * 2
        expected = rotations ** 6 * 2 ** 20 * 2 ** (2 * 20 - 6 + 1)
        self.assertEqual(count_all_embeddings(spec), expected)


class FormulaRowTest(SimpleTestCase):
    def test_even_row(self):
        row = formula_row(12)
        self.assertEqual(row["orientable_genus"], 50)
        self.assertEqual(row["nonorientable_genus"], 100)

    def test_odd_row(self):
        row = formula_row(7)
        self.assertEqual(row["euler_genus_lower_bound"], 13)
        self.assertIsNone(row["orientable_genus"])
        self.assertEqual(row["note"], "out of scope (odd)")

    def test_planar_row(self):
        row = formula_row(4)
        self.assertEqual(row["orientable_genus"], 0)
        self.assertIsNone(row["nonorientable_genus"])
