import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import networkx as nx
from sympy import binomial, factorial

from utils.exceptions import InvalidSpec, OddOrder, UnsupportedCase

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HypergraphSpec:
    """
    The complete 3-uniform hypergraph on [n] with every triple repeated m times.
    """
    n: int
    m: int = 1

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 4:
            raise InvalidSpec(f"n must be an integer >= 4, got {self.n!r}.")
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidSpec(f"m must be an integer >= 1, got {self.m!r}.")

    @property
    def edge_count(self):
        return self.m * int(binomial(self.n, 3))

    @property
    def levi_vertex_count(self):
        return self.n + self.edge_count

    @property
    def levi_edge_count(self):
        return 3 * self.edge_count

    @property
    def is_even(self):
        return self.n % 2 == 0


@dataclass(frozen=True, order=True)
class TripleVertex:
    """
    A Y-side vertex of the Levi graph: a sorted triple plus a copy index.
    `multiplicity` only decides whether the label carries the copy index.
    """
    elements: tuple
    copy: int = 0
    multiplicity: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    def __contains__(self, vertex):
        return vertex in self.elements

    def others(self, vertex):
        return tuple(v for v in self.elements if v != vertex)

    def label(self, multiplicity=None):
        i, j, k = self.elements
        text = f"e{{{i},{j},{k}}}"
        if (multiplicity or self.multiplicity) > 1:
            text += f"#{self.copy}"
        return text

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class LeviGraph:
    spec: HypergraphSpec
    x_vertices: tuple
    y_vertices: tuple
    adjacency: dict = field(compare=False, repr=False)

    def neighbors(self, vertex):
        return self.adjacency[vertex]

    def degree(self, vertex):
        return len(self.adjacency[vertex])

    @property
    def vertices(self):
        return self.x_vertices + self.y_vertices

    def edges(self):
        """Every edge once, as (x, y) with x in X and y in Y."""
        for y in self.y_vertices:
            for x in y.elements:
                yield (x, y)

    @property
    def vertex_count(self):
        return len(self.x_vertices) + len(self.y_vertices)

    @property
    def edge_count(self):
        return 3 * len(self.y_vertices)

    def is_x(self, vertex):
        return not isinstance(vertex, TripleVertex)

    @cached_property
    def networkx(self):
        return levi_graph_networkx(self)


def build_levi(spec):
    """
    Builds the bipartite incidence graph of mK_n^3. Triples are sorted and
    copies are indexed 0..m-1, so adjacency is canonical.
    """
    x_vertices = tuple(range(1, spec.n + 1))
    y_vertices = tuple(
        TripleVertex(triple, copy, spec.m)
        for triple in combinations(x_vertices, 3)
        for copy in range(spec.m)
    )
    adjacency = {x: [] for x in x_vertices}
    for y in y_vertices:
        adjacency[y] = tuple(y.elements)
        for x in y.elements:
            adjacency[x].append(y)
    for x in x_vertices:
        adjacency[x] = tuple(adjacency[x])

    logger.debug(f"Built Levi graph for n={spec.n} m={spec.m}: {len(adjacency)} vertices")
    return LeviGraph(spec=spec, x_vertices=x_vertices, y_vertices=y_vertices, adjacency=adjacency)


def levi_graph_networkx(levi):
    graph = nx.Graph()
    graph.add_nodes_from(levi.x_vertices, bipartite=0)
    graph.add_nodes_from(levi.y_vertices, bipartite=1)
    graph.add_edges_from(levi.edges())
    return graph


def euler_genus_lower_bound(spec):
    """Returns ceil(e/2 - n + 2), exact in integers."""
    numerator = spec.edge_count - 2 * spec.n + 4
    return max(0, -(-numerator // 2))


def genus_formula(spec, orientable=True):
    """
    Minimum genus of mK_n^3 for even n: the orientable genus when `orientable`
    is set, the non-orientable genus otherwise.
    """
    if not spec.is_even:
        raise OddOrder(f"n={spec.n} is odd; the minimum genus is strictly greater than the Euler bound.")
    if not orientable and spec.m == 1 and spec.n == 4:
        raise UnsupportedCase("K_4^3 is planar, so it has no non-orientable minimum-genus embedding.")

    euler_genus, remainder = divmod((spec.n - 2) * (spec.m * spec.n * (spec.n - 1) - 12), 12)
    assert remainder == 0
    if orientable:
        assert euler_genus % 2 == 0
        return euler_genus // 2
    return euler_genus


def count_all_embeddings(spec):
    """
    Number of inequivalent 2-cell embeddings of the Levi graph in any surface:
    rotations at X and Y vertices times signatures on edges outside a spanning tree.
    """
    x_degree = spec.m * int(binomial(spec.n - 1, 2))
    rotations = int(factorial(x_degree - 1)) ** spec.n * 2 ** spec.edge_count
    cycle_rank = spec.levi_edge_count - spec.levi_vertex_count + 1
    return rotations * 2 ** cycle_rank


def formula_row(n, m=1):
    """
    One row of the `formula` table. Odd orders only carry the lower bound.
    """
    spec = HypergraphSpec(n=n, m=m)
    row = {
        "n": n,
        "m": m,
        "euler_genus_lower_bound": euler_genus_lower_bound(spec),
        "orientable_genus": None,
        "nonorientable_genus": None,
        "note": "",
    }
    if not spec.is_even:
        row["note"] = "out of scope (odd)"
        return row

    row["orientable_genus"] = genus_formula(spec, orientable=True)
    try:
        row["nonorientable_genus"] = genus_formula(spec, orientable=False)
    except UnsupportedCase:
        row["note"] = "planar, no non-orientable minimum embedding"
    return row
