import bisect
import logging
from collections import defaultdict
from dataclasses import dataclass, field

from apps.circuits.circuits import Circuit, EmbeddingSet, is_embedding_set
from apps.levi.hypergraph import HypergraphSpec, TripleVertex, build_levi, euler_genus_lower_bound
from utils.exceptions import NotAnEmbeddingSet, NotQuadrilateral, OddOrder

from .faces import is_orientable, trace_faces

logger = logging.getLogger(__name__)


def edge_key(u, v):
    """Edges are keyed (x, y) with x in X and y a TripleVertex."""
    return (v, u) if isinstance(u, TripleVertex) else (u, v)


@dataclass(frozen=True)
class EmbeddingScheme:
    """
    Rotation system plus signature on the Levi graph. `rotation[v]` is the
    cyclic order of the neighbours of v; `signature[(x, y)]` is +1 or -1.
    """
    levi: object
    rotation: dict = field(compare=False)
    signature: dict = field(compare=False)

    def sign(self, u, v):
        return self.signature[edge_key(u, v)]

    def replace(self, rotation=None, signature=None):
        return EmbeddingScheme(
            levi=self.levi,
            rotation=self.rotation if rotation is None else rotation,
            signature=self.signature if signature is None else signature,
        )

    def __eq__(self, other):
        if not isinstance(other, EmbeddingScheme):
            return NotImplemented
        return (
            self.levi.spec == other.levi.spec
            and self.rotation == other.rotation
            and self.signature == other.signature
        )

    __hash__ = None


### SET TO SCHEME

class _CopyMatcher:
    """
    Pairs the corners of the circuits so that every copy of a triple {i,j,k}
    owns exactly one traversal of jk in T_i, of ik in T_j and of ij in T_k.

    A corner (i, p) is the transition at position p of T_i. Matching it with
    a corner (j, q) of T_j through i links the edge traversals on either side;
    the links must split into triangles, one per triple copy. Corners are
    taken in scan order, jumping ahead to any corner with fewer live
    options, and no partial assignment lets a link component grow past
    three traversals.
    """

    def __init__(self, embedding_set):
        self.circuits = {c.excluded: c for c in embedding_set}
        self.links = defaultdict(list)
        self.corners = []
        self.offers = defaultdict(list)
        for i, circuit in self.circuits.items():
            for p, transition in circuit.transitions():
                j = transition.mid
                key = (i, j, tuple(sorted((transition.a, transition.b))))
                if i < j:
                    self.corners.append(((i, p), key))
                else:
                    self.offers[(j, i, key[2])].append((i, p))
        self.taken = set()

    def _edge_sides(self, corner):
        i, p = corner
        length = len(self.circuits[i])
        return (i, (p - 1) % length), (i, p)

    def _component_size(self, start, limit=4):
        seen = {start}
        stack = [start]
        while stack and len(seen) < limit:
            for w in self.links[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    def _options(self, corner, key):
        i, p = corner
        transition = self.circuits[i].transitions()[p][1]
        for partner in self.offers[key]:
            if partner in self.taken:
                continue
            j, q = partner
            other = self.circuits[j].transitions()[q][1]
            if transition.a == transition.b:
                yield partner, False
                yield partner, True
            else:
                yield partner, other.a != transition.a

    def _link(self, corner, partner, flipped):
        left, right = self._edge_sides(corner)
        other_left, other_right = self._edge_sides(partner)
        pairs = [(left, other_right), (right, other_left)] if flipped else [(left, other_left), (right, other_right)]
        for u, v in pairs:
            self.links[u].append(v)
            self.links[v].append(u)
        return pairs

    def _unlink(self, pairs):
        for u, v in pairs:
            self.links[u].remove(v)
            self.links[v].remove(u)

    def _feasible(self, corner, key):
        options = []
        for partner, flipped in self._options(corner, key):
            pairs = self._link(corner, partner, flipped)
            if all(self._component_size(node) <= 3 for pair in pairs for node in pair):
                options.append((partner, flipped))
            self._unlink(pairs)
        return options

    def _next_corner(self, remaining):
        """First corner in scan order, unless a later one has fewer live options."""
        best = None
        for index in remaining:
            options = self._feasible(*self.corners[index])
            if best is None or len(options) < len(best[1]):
                best = (index, options)
            if len(options) <= 1:
                break
        return best

    def solve(self):
        remaining = list(range(len(self.corners)))
        frames = []
        while remaining:
            index, options = self._next_corner(remaining)
            remaining.remove(index)
            frames.append([index, options, None])
            while frames:
                frame = frames[-1]
                if frame[2] is not None:
                    partner, pairs = frame[2]
                    self._unlink(pairs)
                    self.taken.discard(partner)
                    frame[2] = None
                if not frame[1]:
                    frames.pop()
                    bisect.insort(remaining, frame[0])
                    continue
                partner, flipped = frame[1].pop(0)
                frame[2] = (partner, self._link(self.corners[frame[0]][0], partner, flipped))
                self.taken.add(partner)
                break
            else:
                return None
        return self._triangles()

    def _triangles(self):
        seen = set()
        triangles = []
        for i in sorted(self.circuits):
            for p in range(len(self.circuits[i])):
                node = (i, p)
                if node in seen:
                    continue
                component = {node, *self.links[node]}
                for w in list(component):
                    component.update(self.links[w])
                if len(component) != 3:
                    return None
                seen |= component
                triangles.append(sorted(component))
        return triangles


def _sign_for(circuit, position, y):
    """+1 iff T_x runs along the cyclic order of y read from just after x."""
    r = y.elements.index(circuit.excluded)
    head = (y.elements[(r + 1) % 3], y.elements[(r + 2) % 3])
    tail = circuit.seq[position], circuit.seq[(position + 1) % len(circuit)]
    return 1 if tail == head else -1


def set_to_scheme(embedding_set):
    """
    Builds the quadrilateral embedding scheme of an embedding set. The
    rotation at i lists the triples {i, a_p, a_p+1} along T_i; every triple
    rotates as i, j, k in increasing order. For m > 1 the triple copies are
    numbered by the order of their jk traversal in T_i, i the least element.
    """
    report = is_embedding_set(embedding_set)
    if not report:
        raise NotAnEmbeddingSet(report.message)

    n, m = embedding_set.n, embedding_set.m
    levi = build_levi(HypergraphSpec(n=n, m=m))
    triangles = _CopyMatcher(embedding_set).solve()
    if triangles is None:
        raise NotAnEmbeddingSet("no pairing of traversals closes every triple copy")

    owner = {}
    copies = defaultdict(int)
    for triangle in triangles:
        i, p = triangle[0]
        circuit = embedding_set.circuit(i)
        elements = (i, circuit.seq[p], circuit.seq[(p + 1) % len(circuit)])
        y = TripleVertex(elements, copies[frozenset(elements)], m)
        copies[frozenset(elements)] += 1
        for node in triangle:
            owner[node] = y

    rotation = {}
    signature = {}
    for circuit in embedding_set:
        x = circuit.excluded
        ring = []
        for p in range(len(circuit)):
            y = owner[(x, p)]
            ring.append(y)
            signature[(x, y)] = _sign_for(circuit, p, y)
        rotation[x] = tuple(ring)
    for y in levi.y_vertices:
        rotation[y] = y.elements

    logger.debug(f"built scheme for n={n} m={m} from {len(triangles)} triple copies")
    return EmbeddingScheme(levi=levi, rotation=rotation, signature=signature)


### SCHEME TO SET

def _circuit_from_ring(x, ring, n, m):
    """Recovers a_0 .. a_N-1 from the triples {x, a_p-1, a_p} around x."""
    pairs = [y.others(x) for y in ring]
    length = len(pairs)
    start = next(
        (p for p in range(length) if len(set(pairs[p - 1]) & set(pairs[p])) == 1),
        None,
    )
    if start is None:
        raise NotAnEmbeddingSet(f"rotation at {x} does not read as a circuit")

    seq = [None] * length
    seq[start] = (set(pairs[start - 1]) & set(pairs[start])).pop()
    for step in range(1, length):
        p = (start + step) % length
        previous = pairs[(p - 1) % length]
        current = seq[(p - 1) % length]
        if current not in previous:
            raise NotAnEmbeddingSet(f"rotation at {x} breaks between positions {p - 1} and {p}")
        seq[p] = previous[1] if previous[0] == current else previous[0]
    closing = pairs[start - 1]
    if seq[start] not in closing or {seq[start - 1], seq[start]} != set(closing):
        raise NotAnEmbeddingSet(f"rotation at {x} does not close up")
    return Circuit(excluded=x, n=n, seq=seq, m=m)


def scheme_to_set(scheme):
    spec = scheme.levi.spec
    if not spec.is_even:
        raise OddOrder(f"n={spec.n} is odd, so K_{spec.n - 1} has no Eulerian circuit.")
    faces = trace_faces(scheme)
    if not faces.quadrilateral:
        raise NotQuadrilateral(f"face lengths {faces.histogram}")

    circuits = [
        _circuit_from_ring(x, scheme.rotation[x], spec.n, spec.m)
        for x in scheme.levi.x_vertices
    ]
    return EmbeddingSet(n=spec.n, m=spec.m, circuits=circuits, strong=is_orientable(scheme))


def minimum_genus_failure(embedding_set, orientable):
    """
    None when the set is valid and traces to a quadrilateral embedding of the
    requested orientability at the Euler lower bound; otherwise the reason.
    """
    report = is_embedding_set(embedding_set, require_strong=orientable)
    if not report:
        return report.message
    faces = trace_faces(set_to_scheme(embedding_set))
    bound = euler_genus_lower_bound(HypergraphSpec(n=embedding_set.n, m=embedding_set.m))
    if not faces.quadrilateral:
        return f"face lengths {faces.histogram}"
    if faces.euler_genus != bound:
        return f"Euler genus {faces.euler_genus}, expected {bound}"
    if faces.orientable != orientable:
        return "orientable" if faces.orientable else "non-orientable"
    return None
