from collections import Counter
from unittest.mock import patch

from django.test import SimpleTestCase

import networkx as nx
from hypothesis import given, settings, strategies as st

from apps.builder.fixtures import base_set
from apps.builder.induction import build_even
from apps.builder.multi import build_multi
from apps.circuits.circuits import equivalent, is_embedding_set
from apps.levi.hypergraph import HypergraphSpec, TripleVertex, build_levi, euler_genus_lower_bound
from utils.exceptions import (
    Disconnected,
    FormatError,
    GraphMismatch,
    NotAnEmbeddingSet,
    NotQuadrilateral,
    OddOrder,
    UnknownFormatVersion,
)

from .embedding import EmbeddingScheme, scheme_to_set, set_to_scheme
from .faces import is_orientable, schemes_equivalent, switch, switching_set, trace_faces
from .formats import format_scheme, parse_scheme


def double_cover_faces(scheme):
    """
    Face count, sorted face lengths, Euler genus and orientability read off
    the orientable double cover. The cover is traced with plain dart orbits;
    every face of the scheme lifts to exactly two faces, and the cover is
    connected exactly when the scheme is non-orientable.
    """
    rotation = {}
    for v, ring in scheme.rotation.items():
        for layer in (1, -1):
            lifted = [(w, layer * scheme.sign(v, w)) for w in ring]
            rotation[(v, layer)] = tuple(lifted) if layer == 1 else tuple(reversed(lifted))

    cover = nx.Graph()
    seen = set()
    lengths = []
    for start_tail, ring in rotation.items():
        for start_head in ring:
            cover.add_edge(start_tail, start_head)
            dart = (start_tail, start_head)
            if dart in seen:
                continue
            length = 0
            while dart not in seen:
                seen.add(dart)
                length += 1
                tail, head = dart
                around = rotation[head]
                dart = (head, around[(around.index(tail) + 1) % len(around)])
            lengths.append(length)

    halved = Counter()
    for length, count in Counter(lengths).items():
        halved[length] = count // 2
    face_lengths = tuple(sorted(halved.elements()))
    euler_genus = 2 - scheme.levi.vertex_count + scheme.levi.edge_count - len(face_lengths)
    return len(face_lengths), face_lengths, euler_genus, nx.number_connected_components(cover) == 2


def scheme_of(kind):
    return set_to_scheme(base_set(kind))


### SET TO SCHEME

class SetToSchemeTest(SimpleTestCase):
    def test_planar_k4(self):
        faces = trace_faces(scheme_of("orientable_4"))
        self.assertEqual(faces.face_count, 6)
        self.assertEqual(faces.euler_genus, 0)
        self.assertTrue(faces.orientable)
        self.assertTrue(faces.quadrilateral)

    def test_strong_k6(self):
        faces = trace_faces(scheme_of("orientable_6"))
        self.assertEqual(faces.face_count, 30)
        self.assertEqual(faces.histogram, {4: 30})
        self.assertEqual(faces.euler_genus, 6)
        self.assertEqual(faces.genus, 3)
        self.assertTrue(faces.orientable)

    def test_nonstrong_k6(self):
        faces = trace_faces(scheme_of("nonorientable_6"))
        self.assertTrue(faces.quadrilateral)
        self.assertEqual(faces.euler_genus, 6)
        self.assertFalse(faces.orientable)

    def test_klein_bottle(self):
        scheme = scheme_of("multi_nonorientable_4")
        faces = trace_faces(scheme)
        self.assertTrue(faces.quadrilateral)
        self.assertEqual(faces.euler_genus, 2)
        self.assertFalse(faces.orientable)
        self.assertEqual({y.copy for y in scheme.levi.y_vertices}, {0, 1})

    def test_rotation_reads_circuit(self):
        scheme = scheme_of("orientable_6")
        # T_1 = 3 4 2 5 ...: the first two triples around 1
        self.assertEqual(scheme.rotation[1][:2], (TripleVertex((1, 3, 4)), TripleVertex((1, 2, 4))))
        self.assertEqual(scheme.rotation[TripleVertex((2, 4, 5))], (2, 4, 5))

    def test_signature_rule(self):
        scheme = scheme_of("orientable_6")
        # 3 -> 4 along T_1 agrees with 1 < 3 < 4
        self.assertEqual(scheme.sign(1, TripleVertex((1, 3, 4))), 1)
        # 4 -> 2 along T_1 runs against 1 < 2 < 4
        self.assertEqual(scheme.sign(1, TripleVertex((1, 2, 4))), -1)

    def test_rejects_broken_set(self):
        embedding_set = base_set("orientable_6")
        circuits = list(embedding_set.circuits)
        circuits[0] = circuits[0].reverse().with_seq((3, 2, 4, 5, 3, 6, 4, 5, 6, 2))
        with self.assertRaises(NotAnEmbeddingSet):
            set_to_scheme(embedding_set.replace(circuits=circuits))

    def test_matches_double_cover_oracle(self):
        schemes = [scheme_of(kind) for kind in ("orientable_4", "orientable_6", "nonorientable_6", "multi_nonorientable_4")]
        schemes += [
            set_to_scheme(build_even(8)),
            set_to_scheme(build_even(8, orientable=False, seed=5)),
            set_to_scheme(build_even(10, seed=2)),
            set_to_scheme(build_multi(4, 3)),
            set_to_scheme(build_multi(6, 2, orientable=False)),
        ]
        rotation = dict(schemes[1].rotation)
        rotation[1] = rotation[1][::-1]
        schemes.append(schemes[1].replace(rotation=rotation))

        for scheme in schemes:
            faces = trace_faces(scheme)
            self.assertEqual(
                double_cover_faces(scheme),
                (faces.face_count, faces.face_lengths, faces.euler_genus, faces.orientable),
                scheme.levi.spec,
            )


### SCHEME TO SET

class SchemeToSetTest(SimpleTestCase):
    def test_round_trip(self):
        for kind in ("orientable_4", "orientable_6", "nonorientable_6", "multi_nonorientable_4"):
            embedding_set = base_set(kind)
            recovered = scheme_to_set(set_to_scheme(embedding_set))
            self.assertEqual(recovered.strong, embedding_set.strong)
            for original, found in zip(embedding_set, recovered):
                self.assertTrue(equivalent(original, found), kind)

    def test_seeded_builds_round_trip(self):
        cases = [
            (n, m, orientable)
            for m in (1, 2)
            for orientable in (True, False)
            for n in (4, 6, 8, 10)
            if orientable or n > 4 or m > 1
        ]
        for seed in range(200):
            n, m, orientable = cases[seed % len(cases)]
            if m == 1:
                embedding_set = build_even(n, orientable=orientable, seed=seed)
            else:
                embedding_set = build_multi(n, m, orientable=orientable, seed=seed)
            scheme = set_to_scheme(embedding_set)
            recovered = scheme_to_set(scheme)
            strong = is_embedding_set(embedding_set).strong
            self.assertEqual(strong, orientable, (n, m, seed))
            self.assertEqual(is_orientable(scheme), strong, (n, m, seed))
            self.assertEqual(recovered.strong, strong, (n, m, seed))
            for original, found in zip(embedding_set, recovered):
                self.assertTrue(equivalent(original, found), (n, m, seed))

    def test_scheme_round_trip_is_switching_equivalent(self):
        scheme = scheme_of("nonorientable_6")
        self.assertTrue(schemes_equivalent(scheme, set_to_scheme(scheme_to_set(scheme))))

    def test_planar_circuits_are_triangles(self):
        recovered = scheme_to_set(scheme_of("orientable_4"))
        self.assertEqual(len(recovered), 4)
        self.assertTrue(all(len(circuit) == 3 for circuit in recovered))

    def test_non_quadrilateral(self):
        scheme = scheme_of("orientable_4")
        rotation = dict(scheme.rotation)
        rotation[1] = rotation[1][::-1]
        broken = scheme.replace(rotation=rotation)
        self.assertIn(12, trace_faces(broken).face_lengths)
        with self.assertRaises(NotQuadrilateral):
            scheme_to_set(broken)

    def test_odd_order(self):
        levi = build_levi(HypergraphSpec(n=5))
        scheme = EmbeddingScheme(
            levi=levi,
            rotation={v: levi.neighbors(v) for v in levi.vertices},
            signature={edge: 1 for edge in levi.edges()},
        )
        with self.assertRaises(OddOrder):
            scheme_to_set(scheme)


### FACES

class TraceFacesTest(SimpleTestCase):
    def setUp(self):
        self.scheme = scheme_of("orientable_6")

    def test_euler_identity(self):
        faces = trace_faces(self.scheme)
        levi = self.scheme.levi
        self.assertEqual(levi.vertex_count - levi.edge_count + faces.face_count + faces.euler_genus, 2)
        self.assertEqual(sum(faces.face_lengths), 120)

    def test_all_positive_is_orientable(self):
        signature = {edge: 1 for edge in self.scheme.signature}
        self.assertTrue(is_orientable(self.scheme.replace(signature=signature)))
        self.assertFalse(is_orientable(scheme_of("nonorientable_6")))

    def test_disconnected(self):
        with patch("apps.scheme.faces.nx.is_connected", return_value=False):
            with self.assertRaises(Disconnected):
                trace_faces(self.scheme)

    @given(st.data())
    @settings(max_examples=1000, deadline=None)
    def test_perturbations_never_beat_the_lower_bound(self, data):
        levi = self.scheme.levi
        rotation = dict(self.scheme.rotation)
        signature = dict(self.scheme.signature)
        for x in data.draw(st.lists(st.sampled_from(levi.x_vertices), max_size=3)):
            ring = list(rotation[x])
            a = data.draw(st.integers(0, len(ring) - 1))
            b = data.draw(st.integers(0, len(ring) - 1))
            ring[a], ring[b] = ring[b], ring[a]
            rotation[x] = tuple(ring)
        for edge in data.draw(st.lists(st.sampled_from(sorted(signature, key=str)), max_size=6)):
            signature[edge] = -signature[edge]
        faces = trace_faces(self.scheme.replace(rotation=rotation, signature=signature))

        self.assertGreaterEqual(faces.euler_genus, euler_genus_lower_bound(levi.spec))
        self.assertEqual(sum(faces.face_lengths), 2 * levi.edge_count)
        self.assertEqual(levi.vertex_count - levi.edge_count + faces.face_count + faces.euler_genus, 2)
        if faces.orientable:
            self.assertEqual(faces.euler_genus % 2, 0)


class SwitchingTest(SimpleTestCase):
    def setUp(self):
        self.scheme = scheme_of("orientable_6")

    @given(st.data())
    @settings(max_examples=50, deadline=None)
    def test_switching_invariance(self, data):
        vertices = data.draw(st.sets(st.sampled_from(sorted(self.scheme.levi.vertices, key=str))))
        switched = switch(self.scheme, vertices)
        self.assertEqual(trace_faces(switched), trace_faces(self.scheme))
        self.assertEqual(switching_set(self.scheme, switched), set(vertices))

    def test_global_reflection(self):
        reflected = switch(self.scheme, self.scheme.levi.vertices)
        self.assertEqual(reflected.signature, self.scheme.signature)
        self.assertTrue(schemes_equivalent(self.scheme, reflected))

    def test_single_triple(self):
        self.assertTrue(schemes_equivalent(self.scheme, switch(self.scheme, [TripleVertex((1, 2, 3))])))

    def test_orientability_separates(self):
        self.assertFalse(schemes_equivalent(self.scheme, scheme_of("nonorientable_6")))

    def test_different_graphs(self):
        with self.assertRaises(GraphMismatch):
            schemes_equivalent(self.scheme, scheme_of("orientable_4"))


### TEXT FORMAT

class SchemeFormatTest(SimpleTestCase):
    def test_round_trip(self):
        for kind in ("orientable_4", "multi_nonorientable_4"):
            scheme = scheme_of(kind)
            text = format_scheme(scheme)
            parsed = parse_scheme(text)
            self.assertEqual(parsed, scheme)
            self.assertEqual(format_scheme(parsed), text)

    def test_layout(self):
        lines = format_scheme(scheme_of("multi_nonorientable_4")).splitlines()
        self.assertEqual(lines[0], "# kn3-scheme v1")
        self.assertTrue(lines[1].startswith("rot 1: e{1,"))
        self.assertIn("#1", lines[1])
        self.assertRegex(lines[-1], r"^sig \d e\{\d,\d,\d\}#\d: [+-]1$")

    def test_parsed_triples_label_like_the_file(self):
        text = format_scheme(scheme_of("multi_nonorientable_4"))
        parsed = parse_scheme(text)
        for x in parsed.levi.x_vertices:
            ring = " ".join(str(y) for y in parsed.rotation[x])
            self.assertIn(f"rot {x}: {ring}\n", text)

    def test_unknown_version(self):
        text = format_scheme(scheme_of("orientable_4")).replace("v1", "v2", 1)
        with self.assertRaises(UnknownFormatVersion):
            parse_scheme(text)

    def test_missing_signature(self):
        text = "".join(format_scheme(scheme_of("orientable_4")).splitlines(keepends=True)[:-1])
        with self.assertRaises(FormatError):
            parse_scheme(text)

    def test_bad_rotation(self):
        text = format_scheme(scheme_of("orientable_4")).replace("rot 1: e{1,2,3}", "rot 1: e{2,3,4}", 1)
        with self.assertRaises(FormatError):
            parse_scheme(text)
