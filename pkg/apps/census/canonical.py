import hashlib
import logging
from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_edge_match, categorical_node_match
from django.conf import settings

from apps.builder.formats import format_embedding_set
from apps.circuits.circuits import Circuit, EmbeddingSet, least_rotation
from utils.exceptions import BoundExceeded, MismatchedAmbient

logger = logging.getLogger(__name__)


def canonical_circuit(circuit):
    """Least vertex sequence over every rotation of the circuit and of its reverse."""
    return min(least_rotation(circuit.seq), least_rotation(tuple(reversed(circuit.seq))))


@dataclass(frozen=True)
class CanonicalSet:
    n: int
    m: int
    circuits: tuple
    strong: bool = field(default=False, compare=False)

    def embedding_set(self):
        return EmbeddingSet(
            n=self.n,
            m=self.m,
            circuits=[
                Circuit(excluded=i, n=self.n, seq=seq, m=self.m)
                for i, seq in enumerate(self.circuits, start=1)
            ],
            strong=self.strong,
        )

    @property
    def text(self):
        return format_embedding_set(self.embedding_set())

    @property
    def digest(self):
        return "sha256:" + hashlib.sha256(self.text.encode("utf-8")).hexdigest()


def canonicalize(embedding_set):
    return CanonicalSet(
        n=embedding_set.n,
        m=embedding_set.m,
        circuits=tuple(canonical_circuit(c) for c in embedding_set.circuits),
        strong=embedding_set.strong,
    )


def incidence_graph(embedding_set):
    """
    Coloured graph whose automorphisms are exactly the relabellings of [n]
    combined with rotations and reversals of each circuit: one node per
    vertex of [n], one per circuit position, the positions of a circuit
    joined in a cycle, each position tied to its owner and to its label.
    """
    graph = nx.Graph()
    for i in range(1, embedding_set.n + 1):
        graph.add_node(("x", i), kind="x")
    for circuit in embedding_set.circuits:
        length = len(circuit)
        for k, v in enumerate(circuit.seq):
            node = ("p", circuit.excluded, k)
            graph.add_node(node, kind="p")
            graph.add_edge(node, ("x", circuit.excluded), kind="owner")
            graph.add_edge(node, ("x", v), kind="label")
            graph.add_edge(node, ("p", circuit.excluded, (k + 1) % length), kind="cycle")
    return graph


def sets_isomorphic(first, second):
    """
    A permutation sigma of [n] (as a dict) such that relabelling `first` by
    sigma gives a set equivalent to `second`, or None.
    """
    if (first.n, first.m) != (second.n, second.m):
        raise MismatchedAmbient(f"sets differ in ambient: n={first.n},{second.n} m={first.m},{second.m}")
    bound = settings.KN3_ISOMORPHISM_MAX_ORDER
    if first.n > bound:
        raise BoundExceeded(f"isomorphism search is limited to n <= {bound}, got n={first.n}.")

    if canonicalize(first) == canonicalize(second):
        return {i: i for i in range(1, first.n + 1)}

    matcher = GraphMatcher(
        incidence_graph(first),
        incidence_graph(second),
        node_match=categorical_node_match("kind", None),
        edge_match=categorical_edge_match("kind", None),
    )
    if not matcher.is_isomorphic():
        return None
    return {node[1]: image[1] for node, image in matcher.mapping.items() if node[0] == "x"}
