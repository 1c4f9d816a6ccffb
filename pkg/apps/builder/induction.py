import itertools
import logging
from dataclasses import dataclass
from typing import Optional

from sympy import binomial

from apps.circuits.circuits import Circuit, EmbeddingSet, Transition, orient_strongly
from utils.exceptions import InvalidSpec, NotAnEmbeddingSet, OddOrder, UnsupportedCase
from utils.random_utils import make_rng

from .fixtures import base_set

logger = logging.getLogger(__name__)


def _require_even(n):
    if n % 2:
        raise OddOrder(f"n must be even, got {n}.")


### INSERTION TRAILS

def build_sigma(i, n):
    """
    [n] without i and i+1, in increasing order except that every pair
    2j-1, 2j lying below i is swapped.
    """
    _require_even(n)
    if i % 2 == 0 or not 1 <= i <= n - 1:
        raise InvalidSpec(f"sigma is defined for odd 1 <= i <= {n - 1}, got {i}.")
    sigma = []
    for first in range(1, n, 2):
        if first == i:
            continue
        sigma.extend((first + 1, first) if first < i else (first, first + 1))
    return tuple(sigma)


@dataclass(frozen=True)
class InsertionTrail:
    """
    The trail spliced into T_i when two apex vertices x=n+1, y=n+2 are added.
    It hangs off `anchor` (i+1 for odd i, i-1 for even i) and ends there.
    """
    vertex: int
    n: int
    sigma: tuple
    trail: tuple

    @property
    def anchor(self):
        return self.trail[-1]

    @property
    def apexes(self):
        return self.n + 1, self.n + 2

    def __str__(self):
        x, y = self.apexes
        names = {x: "x", y: "y"}
        return ",".join(names.get(v, str(v)) for v in self.trail)


def build_insertion(i, n):
    _require_even(n)
    if not 1 <= i <= n:
        raise InvalidSpec(f"vertex {i} outside 1..{n}.")
    x, y = n + 1, n + 2
    odd = i % 2 == 1
    base = i if odd else i - 1
    sigma = build_sigma(base, n)
    first, second = (x, y) if odd else (y, x)

    trail = []
    for position, v in enumerate(sigma):
        trail.append(first if position % 2 == 0 else second)
        trail.append(v)
    trail.extend((first, second, base + 1 if odd else base))
    return InsertionTrail(vertex=i, n=n, sigma=sigma, trail=tuple(trail))


### APEX CIRCUITS

def _apex_transitions(n):
    """Transitions through x or y inside every T_j' once its trail is spliced in."""
    x, y = n + 1, n + 2
    for j in range(1, n + 1):
        insertion = build_insertion(j, n)
        context = (insertion.anchor,) + insertion.trail
        for k in range(1, len(context) - 1):
            if context[k] in (x, y):
                yield j, Transition(context[k - 1], context[k], context[k + 1])


def _force(table, arrive, at, leave):
    key = (arrive, at)
    if table.get(key, leave) != leave:
        raise NotAnEmbeddingSet(f"conflicting forced transitions at {at} after {arrive}")
    table[key] = leave


def _follow(table, start):
    """Walks the arc successor table from arc `start` until it closes."""
    seq = [start[0]]
    arc = start
    while True:
        seq.append(arc[1])
        try:
            arc = (arc[1], table[arc])
        except KeyError:
            raise NotAnEmbeddingSet(f"no forced transition leaves {arc[1]} after {arc[0]}")
        if arc == start:
            return seq[:-1]
        if len(seq) > len(table) + 1:
            raise NotAnEmbeddingSet("forced transitions do not close into a circuit")


def _trail_to(table, start, stop):
    trail = [start[0], start[1]]
    arc = start
    while True:
        try:
            nxt = table[arc]
        except KeyError:
            raise NotAnEmbeddingSet(f"no forced transition leaves {arc[1]} after {arc[0]}")
        if nxt == stop:
            return trail
        trail.append(nxt)
        arc = (arc[1], nxt)


def build_apex_circuits(n):
    """
    T_x' and T_y' for the step n -> n+2. Every transition of T_x' through a
    vertex j of [n] is forced by T_j' (a transition a,x,b there forces b,j,a),
    which cuts T_x' into n/2 subtrails from y back to y; they are joined in
    order of their first vertex. T_y' is then forced everywhere, its
    transitions through x coming from those of T_x' through y.
    """
    _require_even(n)
    x, y = n + 1, n + 2
    forced = {x: {}, y: {}}
    for j, transition in _apex_transitions(n):
        _force(forced[transition.mid], transition.b, j, transition.a)

    starts = sorted(at for arrive, at in forced[x] if arrive == y)
    subtrails = [_trail_to(forced[x], (y, start), y) for start in starts]
    expected = int(binomial(n + 1, 2))
    if sum(len(subtrail) for subtrail in subtrails) != expected:
        raise NotAnEmbeddingSet(f"forced transitions of T_x' leave edges uncovered for n={n}")

    # the first subtrail is fixed since T_x' is only defined up to rotation
    for rest in itertools.permutations(subtrails[1:]):
        order = (subtrails[0],) + rest
        seq_x = [v for subtrail in order for v in subtrail]

        through_y = dict(forced[y])
        for position, v in enumerate(seq_x):
            if v == y:
                _force(through_y, seq_x[(position + 1) % len(seq_x)], x, seq_x[position - 1])

        start = (x, 2) if (x, 2) in through_y else min(k for k in through_y if k[0] == x)
        seq_y = _follow(through_y, start)
        if len(seq_y) == expected:
            if rest != tuple(subtrails[1:]):
                logger.warning(f"apex subtrails for n={n} joined in non-default order")
            return (
                Circuit(excluded=x, n=n + 2, seq=seq_x),
                Circuit(excluded=y, n=n + 2, seq=seq_y),
            )
    raise NotAnEmbeddingSet(f"no ordering of the apex subtrails closes T_y' for n={n}")


### TRANSITION CHOICES

@dataclass(frozen=True)
class TransitionChoice:
    """
    Free choices of one induction step. `picks[k]` indexes the candidate
    transitions a,i+1,b of T_i for the k-th odd i (scan order, modulo the
    number of candidates). `matching` pairs up [n]; each pair plays the role
    of (2k-1, 2k) and `swaps[k]` exchanges its two members. `swap_apex`
    exchanges the labels of the two new vertices.
    """
    picks: tuple = ()
    matching: Optional[tuple] = None
    swaps: tuple = ()
    swap_apex: bool = False

    def pick(self, index):
        return self.picks[index] if index < len(self.picks) else 0

    def pairs(self, n):
        if self.matching is None:
            return tuple((i, i + 1) for i in range(1, n, 2))
        pairs = tuple(tuple(pair) for pair in self.matching)
        flat = sorted(v for pair in pairs for v in pair)
        if any(len(pair) != 2 for pair in pairs) or flat != list(range(1, n + 1)):
            raise InvalidSpec(f"matching {self.matching} is not a perfect matching of 1..{n}.")
        return pairs

    def pairs_together(self, u, v, n):
        return any(set(pair) == {u, v} for pair in self.pairs(n))

    def frame(self, n):
        """Permutation of [n+2] from working labels to the caller's labels."""
        frame = {}
        for index, (first, second) in enumerate(self.pairs(n)):
            if index < len(self.swaps) and self.swaps[index]:
                first, second = second, first
            frame[2 * index + 1] = first
            frame[2 * index + 2] = second
        x, y = n + 1, n + 2
        frame[x], frame[y] = (y, x) if self.swap_apex else (x, y)
        return frame


def random_choice(n, rng, orientable=True):
    """
    Draws a TransitionChoice for the step n -> n+2. Non-orientable draws never
    pair 3 with 5 so that T_3 and T_5 keep their mixed transitions.
    """
    candidates = max((n - 2) // 2, 1)
    picks = tuple(rng.randrange(candidates) for _ in range(n // 2))
    vertices = list(range(1, n + 1))
    while True:
        rng.shuffle(vertices)
        matching = tuple(tuple(vertices[k:k + 2]) for k in range(0, n, 2))
        if orientable or {3, 5} not in [set(pair) for pair in matching]:
            break
    swaps = tuple(rng.random() < 0.5 for _ in range(n // 2))
    return TransitionChoice(picks=picks, matching=matching, swaps=swaps, swap_apex=rng.random() < 0.5)


def relabel_set(embedding_set, permutation):
    """Applies a permutation of the vertex labels, given as a dict or a 1-based sequence."""
    if not isinstance(permutation, dict):
        permutation = {i: v for i, v in enumerate(permutation, start=1)}
    labels = list(range(1, embedding_set.n + 1))
    if sorted(permutation) != labels or sorted(permutation.values()) != labels:
        raise InvalidSpec(f"{permutation} is not a permutation of 1..{embedding_set.n}.")
    return embedding_set.relabel(permutation)


### INDUCTION

def _position_of(circuit, transition):
    for position, found in circuit.transitions():
        if found == transition:
            return position
    return None


def _insert_after(circuit, position, trail, n):
    seq = circuit.seq[:position + 1] + tuple(trail) + circuit.seq[position + 1:]
    return Circuit(excluded=circuit.excluded, n=n, seq=seq, m=circuit.m)


def extend_by_two(embedding_set, choice=None):
    """
    One induction step: an embedding set of K_n^3 becomes one of K_{n+2}^3.
    Returns the new set and the transitions that were broken, keyed by circuit.
    """
    choice = choice or TransitionChoice()
    n = embedding_set.n
    _require_even(n)
    if embedding_set.m != 1:
        raise InvalidSpec("the induction on n runs on simple hypergraphs only.")

    frame = choice.frame(n)
    inverse = {label: working for working, label in frame.items() if working <= n}
    circuits = {c.excluded: c for c in relabel_set(embedding_set, inverse)}
    broken = {}

    for index, i in enumerate(range(1, n, 2)):
        t_i, t_next = circuits[i], circuits[i + 1]
        candidates = [p for p, t in t_i.transitions() if t.mid == i + 1]
        p = candidates[choice.pick(index) % len(candidates)]
        a, _, b = t_i.transitions()[p][1]

        partner = Transition(b, i, a)
        q = _position_of(t_next, partner)
        if q is None:
            t_next = t_next.reverse()
            q = _position_of(t_next, partner)
            if q is None:
                raise NotAnEmbeddingSet(f"T {i + 1} has neither {b},{i},{a} nor {a},{i},{b}")
            broken[i + 1] = partner.reversed()
        else:
            broken[i + 1] = partner
        broken[i] = Transition(a, i + 1, b)

        circuits[i] = _insert_after(t_i, p, build_insertion(i, n).trail, n + 2)
        circuits[i + 1] = _insert_after(t_next, q, build_insertion(i + 1, n).trail, n + 2)

    apex_x, apex_y = build_apex_circuits(n)
    extended = EmbeddingSet(
        n=n + 2,
        m=1,
        circuits=[circuits[i] for i in range(1, n + 1)] + [apex_x, apex_y],
        strong=embedding_set.strong,
    )
    broken = {
        frame[i]: Transition(*(frame[v] for v in transition))
        for i, transition in broken.items()
    }
    return relabel_set(extended, frame), broken


def build_even(n, orientable=True, choice=None, seed=None):
    """
    Minimum-genus embedding set of K_n^3. Starts from the planar K_4^3 set
    (orientable) or the non-strong K_6^3 set and adds two vertices at a time.
    `choice` drives the last step; the other steps take the first candidate
    transition, or seeded random choices when `seed` is given.
    """
    _require_even(n)
    if n < 4:
        raise InvalidSpec(f"n must be at least 4, got {n}.")
    if orientable:
        embedding_set = orient_strongly(base_set("orientable_4"))
    elif n < 6:
        raise UnsupportedCase("K_4^3 has no non-orientable quadrilateral embedding.")
    else:
        embedding_set = base_set("nonorientable_6")

    rng = make_rng(seed) if seed is not None else None
    while embedding_set.n < n:
        current = embedding_set.n
        if choice is not None and current + 2 == n:
            step_choice = choice
        elif rng is not None:
            step_choice = random_choice(current, rng, orientable)
        else:
            step_choice = TransitionChoice()
        if not orientable and step_choice.pairs_together(3, 5, current):
            raise InvalidSpec("non-orientable steps must not pair 3 with 5.")

        embedding_set, broken = extend_by_two(embedding_set, step_choice)
        logger.debug(f"extended to n={embedding_set.n}, broke {len(broken)} transitions")
    return embedding_set
