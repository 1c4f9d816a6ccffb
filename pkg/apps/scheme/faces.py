import logging
from collections import Counter
from dataclasses import dataclass

import networkx as nx

from utils.exceptions import Disconnected, GraphMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaceReport:
    face_count: int
    face_lengths: tuple
    euler_genus: int
    orientable: bool

    @property
    def histogram(self):
        return dict(sorted(Counter(self.face_lengths).items()))

    @property
    def quadrilateral(self):
        return all(length == 4 for length in self.face_lengths)

    @property
    def genus(self):
        """Orientable genus or crosscap number, whichever applies."""
        return self.euler_genus // 2 if self.orientable else self.euler_genus


def _require_connected(scheme):
    if not nx.is_connected(scheme.levi.networkx):
        raise Disconnected("face tracing needs a connected graph.")


def trace_faces(scheme):
    """
    Traces faces as orbits of (vertex, next vertex, local orientation) states.
    Entering v along e multiplies the orientation by the sign of e, then the
    walk leaves along the successor of e in the rotation at v (predecessor
    when the orientation is negative). Each face is traced once in each
    direction, so orbits are counted in mirror pairs.
    """
    _require_connected(scheme)
    rotation = scheme.rotation
    position = {v: {w: k for k, w in enumerate(ring)} for v, ring in rotation.items()}

    def advance(state):
        u, v, sign = state
        sign *= scheme.sign(u, v)
        ring = rotation[v]
        k = position[v][u] + (1 if sign > 0 else -1)
        return v, ring[k % len(ring)], sign

    def mirror(state):
        u, v, sign = state
        return v, u, -sign * scheme.sign(u, v)

    seen = set()
    lengths = []
    for u, ring in rotation.items():
        for v in ring:
            for sign in (1, -1):
                state = (u, v, sign)
                if state in seen:
                    continue
                orbit = []
                while state not in seen:
                    seen.add(state)
                    orbit.append(state)
                    state = advance(state)
                reflected = mirror(orbit[0])
                if reflected in orbit:
                    lengths.append(len(orbit) // 2)
                else:
                    lengths.append(len(orbit))
                    # the reverse traversal of the same face
                    state = reflected
                    while state not in seen:
                        seen.add(state)
                        state = advance(state)

    face_count = len(lengths)
    euler_genus = 2 - scheme.levi.vertex_count + scheme.levi.edge_count - face_count
    return FaceReport(
        face_count=face_count,
        face_lengths=tuple(sorted(lengths)),
        euler_genus=euler_genus,
        orientable=is_orientable(scheme),
    )


def switching_potential(scheme):
    """
    Vertex signs s with s(u)s(v) equal to the edge sign on a BFS spanning
    tree of every component.
    """
    graph = scheme.levi.networkx
    potential = {}
    for component in nx.connected_components(graph):
        root = min(component, key=str)
        potential[root] = 1
        for u, v in nx.bfs_edges(graph, root):
            potential[v] = potential[u] * scheme.sign(u, v)
    return potential


def is_orientable(scheme):
    _require_connected(scheme)
    potential = switching_potential(scheme)
    return all(
        potential[x] * potential[y] * scheme.sign(x, y) == 1
        for x, y in scheme.levi.edges()
    )


def switch(scheme, vertices):
    """Inverts the rotation at every vertex of U and negates signs on edges leaving U."""
    inside = set(vertices)
    rotation = {
        v: tuple(reversed(ring)) if v in inside else ring
        for v, ring in scheme.rotation.items()
    }
    signature = {
        (x, y): -sign if (x in inside) != (y in inside) else sign
        for (x, y), sign in scheme.signature.items()
    }
    return scheme.replace(rotation=rotation, signature=signature)


def _cyclic_relation(first, second):
    """'same', 'inverse', 'both' or None when the two rings differ as cycles."""
    if len(first) != len(second) or set(first) != set(second):
        return None
    if not first:
        return "both"
    k = second.index(first[0])
    same = tuple(second[k:] + second[:k]) == tuple(first)
    backwards = tuple(reversed(second))
    k = backwards.index(first[0])
    inverse = tuple(backwards[k:] + backwards[:k]) == tuple(first)
    if same and inverse:
        return "both"
    return "same" if same else "inverse" if inverse else None


def switching_set(first, second):
    """
    A vertex set U whose switching turns `first` into `second`, or None.
    Rotations fix membership of every vertex of degree three or more; signs
    then have to agree edge by edge, which is a 2-colouring problem.
    """
    if first.levi.spec != second.levi.spec:
        raise GraphMismatch(f"schemes live on different Levi graphs: {first.levi.spec} vs {second.levi.spec}")

    membership = {}
    constraints = nx.Graph()
    for v, ring in first.rotation.items():
        relation = _cyclic_relation(tuple(ring), tuple(second.rotation[v]))
        if relation is None:
            return None
        constraints.add_node(v)
        if relation != "both":
            membership[v] = relation == "inverse"
    for x, y in first.levi.edges():
        constraints.add_edge(x, y, crossing=first.sign(x, y) != second.sign(x, y))

    inside = {}
    for component in nx.connected_components(constraints):
        fixed = [v for v in component if v in membership]
        root = fixed[0] if fixed else min(component, key=str)
        inside[root] = membership.get(root, False)
        for u, v in nx.bfs_edges(constraints, root):
            inside[v] = inside[u] ^ constraints[u][v]["crossing"]
    for u, v, data in constraints.edges(data=True):
        if inside[u] ^ inside[v] != data["crossing"]:
            return None
    if any(inside[v] != flag for v, flag in membership.items()):
        return None
    return {v for v, flag in inside.items() if flag}


def schemes_equivalent(first, second):
    return switching_set(first, second) is not None
