import logging
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Optional

import networkx as nx
from sympy import binomial

from utils.exceptions import FormatError, MismatchedAmbient, VertexAbsent

logger = logging.getLogger(__name__)


class Transition(NamedTuple):
    a: int
    mid: int
    b: int

    def reversed(self):
        return Transition(self.b, self.mid, self.a)

    def __str__(self):
        return f"{self.a},{self.mid},{self.b}"


def least_rotation(seq):
    """Lexicographically least rotation of a cyclic sequence."""
    if not seq:
        return tuple(seq)
    return min(tuple(seq[k:]) + tuple(seq[:k]) for k in range(len(seq)))


@dataclass(frozen=True, eq=False)
class Circuit:
    """
    A closed trail in m(K_n - excluded), stored as a cyclic vertex sequence.
    Two circuits are equal when they differ only by the starting point.
    """
    excluded: int
    n: int
    seq: tuple
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(v) for v in self.seq))

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            (self.excluded, self.n, self.m) == (other.excluded, other.n, other.m)
            and least_rotation(self.seq) == least_rotation(other.seq)
        )

    def __hash__(self):
        return hash((self.excluded, self.n, self.m, least_rotation(self.seq)))

    def __str__(self):
        return ",".join(str(v) for v in self.seq)

    @property
    def expected_length(self):
        return self.m * int(binomial(self.n - 1, 2))

    def with_seq(self, seq):
        return Circuit(excluded=self.excluded, n=self.n, seq=tuple(seq), m=self.m)

    def reverse(self):
        return self.with_seq(reversed(self.seq))

    def rotate(self, k):
        k %= max(len(self.seq), 1)
        return self.with_seq(self.seq[k:] + self.seq[:k])

    def relabel(self, permutation, n=None):
        """`permutation` maps old labels to new labels (dict or 1-based sequence)."""
        image = permutation.__getitem__
        return Circuit(
            excluded=image(self.excluded),
            n=n or self.n,
            seq=tuple(image(v) for v in self.seq),
            m=self.m,
        )

    def edges(self):
        """Traversed edges in order, wrap-around included, as (tail, head)."""
        length = len(self.seq)
        return [(self.seq[p], self.seq[(p + 1) % length]) for p in range(length)]

    def pair_counts(self):
        return Counter(frozenset(edge) for edge in self.edges())

    def transitions(self):
        """(position, Transition) for every position of the circuit."""
        length = len(self.seq)
        return [
            (p, Transition(self.seq[p - 1], self.seq[p], self.seq[(p + 1) % length]))
            for p in range(length)
        ]


def equivalent(first, second):
    """Equal up to rotation and reversal."""
    return first == second or first == second.reverse()


### VALIDATION

@dataclass(frozen=True)
class EulerianReport:
    ok: bool
    message: str = ""
    pair: Optional[tuple] = None
    count: Optional[int] = None
    expected: Optional[int] = None

    def __bool__(self):
        return self.ok


def validate_eulerian(circuit):
    """
    Checks that `circuit` traverses every pair of [n] minus the excluded vertex
    exactly m times. Never raises; the report names the first violation.
    """
    seq = circuit.seq
    allowed = set(range(1, circuit.n + 1)) - {circuit.excluded}

    for v in seq:
        if v == circuit.excluded:
            return EulerianReport(False, f"circuit visits its excluded vertex {v}")
        if v not in allowed:
            return EulerianReport(False, f"vertex {v} is outside [{circuit.n}]")

    for tail, head in circuit.edges():
        if tail == head:
            return EulerianReport(False, f"immediate repetition of vertex {tail}", pair=(tail, head))

    counts = circuit.pair_counts()
    for tail, head in circuit.edges():
        pair = frozenset((tail, head))
        if counts[pair] != circuit.m:
            return EulerianReport(
                False,
                f"pair {{{min(pair)},{max(pair)}}} traversed {counts[pair]} times, expected {circuit.m}",
                pair=tuple(sorted(pair)),
                count=counts[pair],
                expected=circuit.m,
            )

    vertices = sorted(allowed)
    for index, u in enumerate(vertices):
        for w in vertices[index + 1:]:
            if counts[frozenset((u, w))] != circuit.m:
                return EulerianReport(
                    False,
                    f"pair {{{u},{w}}} traversed 0 times, expected {circuit.m}",
                    pair=(u, w),
                    count=0,
                    expected=circuit.m,
                )

    if len(seq) != circuit.expected_length:
        return EulerianReport(False, f"length {len(seq)}, expected {circuit.expected_length}")
    return EulerianReport(True)


### TRANSITIONS AND COMPATIBILITY

def transitions_through(circuit, j):
    """Multiset of transitions (a, j, b) around every occurrence of j."""
    found = Counter(t for _, t in circuit.transitions() if t.mid == j)
    if not found:
        raise VertexAbsent(f"vertex {j} does not occur in the circuit excluding {circuit.excluded}")
    return found


def _check_pair(t_i, t_j):
    if (t_i.n, t_i.m) != (t_j.n, t_j.m):
        raise MismatchedAmbient(f"circuits differ in ambient: n={t_i.n},{t_j.n} m={t_i.m},{t_j.m}")
    if t_i.excluded == t_j.excluded:
        raise MismatchedAmbient(f"both circuits exclude vertex {t_i.excluded}")


def _ends(transition):
    return frozenset((transition.a, transition.b))


def compatibility_mismatch(t_i, t_j):
    """
    First transition through j in T_i (or through i in T_j) whose unordered
    ends are not matched with equal multiplicity on the other side, or None.
    """
    _check_pair(t_i, t_j)
    i, j = t_i.excluded, t_j.excluded
    here = transitions_through(t_i, j)
    there = transitions_through(t_j, i)
    needed = Counter(_ends(t) for t in here.elements())
    offered = Counter(_ends(t) for t in there.elements())
    for transition in here:
        if needed[_ends(transition)] != offered[_ends(transition)]:
            return transition
    for transition in there:
        if needed[_ends(transition)] != offered[_ends(transition)]:
            return transition
    return None


def strong_mismatch(t_i, t_j):
    """First transition (a, j, b) in T_i whose partner (b, i, a) in T_j is missing."""
    _check_pair(t_i, t_j)
    i, j = t_i.excluded, t_j.excluded
    here = transitions_through(t_i, j)
    there = transitions_through(t_j, i)
    for transition, count in here.items():
        if there[Transition(transition.b, i, transition.a)] != count:
            return transition
    for transition, count in there.items():
        if here[Transition(transition.b, j, transition.a)] != count:
            return transition
    return None


def is_compatible(t_i, t_j):
    return compatibility_mismatch(t_i, t_j) is None


def is_strongly_compatible(t_i, t_j):
    return strong_mismatch(t_i, t_j) is None


### EMBEDDING SETS

@dataclass(frozen=True)
class EmbeddingSet:
    n: int
    m: int
    circuits: tuple
    strong: bool = False

    def __post_init__(self):
        object.__setattr__(self, "circuits", tuple(self.circuits))

    def __iter__(self):
        return iter(self.circuits)

    def __len__(self):
        return len(self.circuits)

    def circuit(self, i):
        return self.circuits[i - 1]

    def replace(self, circuits=None, strong=None):
        return EmbeddingSet(
            n=self.n,
            m=self.m,
            circuits=self.circuits if circuits is None else circuits,
            strong=self.strong if strong is None else strong,
        )

    def reverse_circuits(self, indices):
        indices = set(indices)
        return self.replace(circuits=[
            c.reverse() if c.excluded in indices else c for c in self.circuits
        ])

    def relabel(self, permutation):
        """
        Applies a permutation of [n] given as a dict. The circuit excluding i
        becomes the circuit excluding permutation[i].
        """
        moved = sorted((c.relabel(permutation) for c in self.circuits), key=lambda c: c.excluded)
        return self.replace(circuits=moved)


@dataclass(frozen=True)
class EmbeddingSetReport:
    ok: bool
    eulerian: bool
    compatible: bool
    strong: bool
    message: str = ""
    failing_circuit: Optional[int] = None
    failing_pair: Optional[tuple] = None
    failing_transition: Optional[Transition] = None
    mixed_pairs: tuple = ()

    def __bool__(self):
        return self.ok


def strength_orientation(embedding_set):
    """
    Decides whether some choice of circuit reversals makes every pair strongly
    compatible. Returns (orientation, mixed_pairs, conflict): `orientation`
    maps each vertex to True when its circuit must be reversed, or is None
    when no choice exists.
    """
    relations = nx.Graph()
    relations.add_nodes_from(c.excluded for c in embedding_set)
    mixed = []
    for index, t_i in enumerate(embedding_set.circuits):
        for t_j in embedding_set.circuits[index + 1:]:
            if is_strongly_compatible(t_i, t_j):
                relations.add_edge(t_i.excluded, t_j.excluded, flip=False)
            elif is_strongly_compatible(t_i.reverse(), t_j):
                relations.add_edge(t_i.excluded, t_j.excluded, flip=True)
            else:
                mixed.append((t_i.excluded, t_j.excluded))
    if mixed:
        return None, tuple(mixed), mixed[0]

    orientation = {}
    for component in nx.connected_components(relations):
        root = min(component)
        orientation[root] = False
        for u, v in nx.bfs_edges(relations, root):
            orientation[v] = orientation[u] ^ relations[u][v]["flip"]
    for u, v, data in sorted(relations.edges(data=True)):
        if orientation[u] ^ orientation[v] != data["flip"]:
            return None, (), tuple(sorted((u, v)))
    return orientation, (), None


def is_embedding_set(embedding_set, require_strong=False):
    """
    Validates every circuit and every pair. Strength is decided up to reversal
    of individual circuits, which is what the correspondence with orientable
    embeddings sees.
    """
    n, m = embedding_set.n, embedding_set.m
    if len(embedding_set) != n:
        return EmbeddingSetReport(False, False, False, False, f"expected {n} circuits, found {len(embedding_set)}")

    for i, circuit in enumerate(embedding_set.circuits, start=1):
        if circuit.excluded != i or circuit.n != n or circuit.m != m:
            return EmbeddingSetReport(
                False, False, False, False,
                f"circuit {i} has excluded={circuit.excluded} n={circuit.n} m={circuit.m}",
                failing_circuit=i,
            )
        report = validate_eulerian(circuit)
        if not report:
            return EmbeddingSetReport(
                False, False, False, False, f"T {i}: {report.message}", failing_circuit=i
            )

    for index, t_i in enumerate(embedding_set.circuits):
        for t_j in embedding_set.circuits[index + 1:]:
            mismatch = compatibility_mismatch(t_i, t_j)
            if mismatch is not None:
                pair = (t_i.excluded, t_j.excluded)
                return EmbeddingSetReport(
                    False, True, False, False,
                    f"T {pair[0]} and T {pair[1]} are not compatible at transition {mismatch}",
                    failing_pair=pair,
                    failing_transition=mismatch,
                )

    orientation, mixed, conflict = strength_orientation(embedding_set)
    strong = orientation is not None
    if strong:
        return EmbeddingSetReport(True, True, True, True)

    t_i, t_j = embedding_set.circuit(conflict[0]), embedding_set.circuit(conflict[1])
    if mixed:
        message = "not strong: no reversal makes pairs " + ", ".join(f"({a},{b})" for a, b in mixed) + " strongly compatible"
    else:
        message = f"not strong: reversals needed by the other pairs break pair ({conflict[0]},{conflict[1]})"
    return EmbeddingSetReport(
        ok=not require_strong,
        eulerian=True,
        compatible=True,
        strong=False,
        message=message,
        failing_pair=conflict,
        failing_transition=strong_mismatch(t_i, t_j),
        mixed_pairs=mixed,
    )


def orient_strongly(embedding_set):
    """The equivalent literally-strong set, or None when the set is not strong."""
    orientation, _, _ = strength_orientation(embedding_set)
    if orientation is None:
        return None
    return embedding_set.reverse_circuits(v for v, flip in orientation.items() if flip).replace(strong=True)


### TEXT FORMAT

def format_circuit_line(circuit):
    return f"T {circuit.excluded}: " + " ".join(str(v) for v in circuit.seq)


def parse_circuit_line(line, n, m=1, lineno=None):
    head, sep, body = line.partition(":")
    parts = head.split()
    if not sep or len(parts) != 2 or parts[0] != "T":
        raise FormatError("expected 'T <i>: v1 v2 ...'", line=lineno)
    try:
        excluded = int(parts[1])
        seq = tuple(int(token) for token in body.split())
    except ValueError:
        raise FormatError("circuit entries must be integers", line=lineno)
    if not seq:
        raise FormatError(f"circuit T {excluded} is empty", line=lineno)
    return Circuit(excluded=excluded, n=n, seq=seq, m=m)


### ENUMERATION

def enumerate_eulerian_circuits(n, excluded, m=1):
    """
    Every Eulerian circuit of m(K_n - excluded), one representative per
    rotation class, starting from the smallest vertex.
    """
    vertices = [v for v in range(1, n + 1) if v != excluded]
    remaining = Counter()
    for index, u in enumerate(vertices):
        for w in vertices[index + 1:]:
            remaining[frozenset((u, w))] = m
    length = m * len(vertices) * (len(vertices) - 1) // 2
    start = vertices[0]
    seen = set()
    path = [start]

    def extend():
        if len(path) == length:
            if path[-1] == start or remaining[frozenset((path[-1], start))] == 0:
                return
            key = least_rotation(path)
            if key not in seen:
                seen.add(key)
                yield Circuit(excluded=excluded, n=n, seq=tuple(path), m=m)
            return
        tail = path[-1]
        for w in vertices:
            pair = frozenset((tail, w))
            if w == tail or remaining[pair] == 0:
                continue
            remaining[pair] -= 1
            path.append(w)
            yield from extend()
            path.pop()
            remaining[pair] += 1

    yield from extend()
