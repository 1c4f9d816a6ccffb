import logging

from apps.circuits.circuits import Circuit, EmbeddingSet
from utils.exceptions import InvalidSpec, NoCommonTransition, OddOrder, UnsupportedCase
from utils.random_utils import make_rng

from .fixtures import base_set
from .induction import build_even

logger = logging.getLogger(__name__)


def splice(host, guest, transition):
    """
    Inserts `guest` into `host` at a transition a,v,b they share: the host
    becomes ..., a, v, [b, ..., a, v], b, ... so the transition multiset of the
    result is the union of both.
    """
    p = next((p for p, t in host.transitions() if t == transition), None)
    q = next((q for q, t in guest.transitions() if t == transition), None)
    if p is None or q is None:
        raise NoCommonTransition(f"transition {transition} is missing from T {host.excluded}")
    rotated = guest.rotate(q + 1)
    return Circuit(
        excluded=host.excluded,
        n=host.n,
        seq=host.seq[:p + 1] + rotated.seq + host.seq[p + 1:],
        m=host.m + guest.m,
    )


def common_transitions(host, guest, through):
    """Transitions through `through` present in both circuits, in host scan order."""
    offered = {t for _, t in guest.transitions() if t.mid == through}
    return [t for _, t in host.transitions() if t.mid == through and t in offered]


def splice_sets(host_set, guest_set, rng=None):
    """
    One step of the induction on m. Circuit i is spliced at a transition
    through its partner (i+1 for odd i, i-1 for even i); the guest circuit is
    reversed only when it shares no transition in its stored direction.
    """
    circuits = []
    for host, guest in zip(host_set.circuits, guest_set.circuits):
        i = host.excluded
        through = i + 1 if i % 2 else i - 1
        candidates = common_transitions(host, guest, through)
        if not candidates:
            guest = guest.reverse()
            candidates = common_transitions(host, guest, through)
        if not candidates:
            raise NoCommonTransition(
                f"T {i} of the multigraph set and of K_{guest.n}^3 share no transition through {through}"
            )
        transition = rng.choice(candidates) if rng is not None else candidates[0]
        circuits.append(splice(host, guest, transition))
    return EmbeddingSet(n=host_set.n, m=host_set.m + guest_set.m, circuits=circuits, strong=host_set.strong)


def build_multi(n, m, orientable=True, seed=None):
    """
    Minimum-genus embedding set of mK_n^3, obtained by splicing a fixed
    embedding set of K_n^3 into itself m-1 times. The non-orientable n=4 case
    starts from the Klein-bottle set of 2K_4^3 and splices the planar set.
    """
    if n % 2:
        raise OddOrder(f"n must be even, got {n}.")
    if m < 1:
        raise InvalidSpec(f"m must be at least 1, got {m}.")

    if not orientable and n == 4:
        if m < 2:
            raise UnsupportedCase("K_4^3 has no non-orientable quadrilateral embedding; use m >= 2.")
        result = base_set("multi_nonorientable_4")
        guest = build_even(4, orientable=True)
    else:
        guest = build_even(n, orientable=orientable, seed=seed)
        result = guest

    rng = make_rng(seed) if seed is not None else None
    while result.m < m:
        result = splice_sets(result, guest, rng)
        logger.debug(f"spliced K_{n}^3 into multiplicity {result.m}")
    return result
