import logging
import re

from django.conf import settings
from django.db import transaction

from apps.builder.formats import check_header, parse_embedding_set
from apps.circuits.circuits import enumerate_eulerian_circuits, is_compatible
from utils.exceptions import BoundExceeded, BudgetExhausted, FormatError, InvalidSpec, OddOrder, UnsupportedCase
from utils.random_utils import derive_seed

from .canonical import canonical_circuit, canonicalize
from .models import CensusRecord, CensusRun
from .tasks import build_variant

logger = logging.getLogger(__name__)

CENSUS_HEADER = "# kn3-census v1"
CENSUS_PREFIX = "# kn3-census"
DIGEST_LINE = re.compile(r"^digest (sha256:[0-9a-f]{64})$")


class DedupeStore:
    """Canonical forms keyed by digest; equal digests are confirmed on the full form."""

    def __init__(self, known=()):
        self._by_digest = {}
        self.forms = []
        for embedding_set in known:
            self.add(canonicalize(embedding_set))

    def __len__(self):
        return len(self.forms)

    def add(self, form):
        bucket = self._by_digest.setdefault(form.digest, [])
        if form in bucket:
            return False
        if bucket:
            logger.warning(f"digest collision on {form.digest}, forms differ")
        bucket.append(form)
        self.forms.append(form)
        return True


def _check_census(n, orientable, count):
    if n % 2:
        raise OddOrder(f"n must be even, got {n}.")
    if n < 4:
        raise InvalidSpec(f"n must be at least 4, got {n}.")
    if not orientable and n < 6:
        raise UnsupportedCase("K_4^3 has no non-orientable quadrilateral embedding.")
    if count < 1:
        raise InvalidSpec(f"count must be positive, got {count}.")


def sample_seed(seed, k):
    return derive_seed(seed, "sample", k)


def collect_variants(n, orientable, count, seed, known=(), start=0, budget=None):
    """
    Draws seeded builds k = start, start+1, ... until the store holds `count`
    classes or `budget` samples have been drawn in total. Builds are dispatched
    in batches and merged in submission order.
    Returns (store, samples drawn, exhausted).
    """
    if budget is None:
        budget = settings.KN3_SAMPLING_BUDGET_FACTOR * count
    store = DedupeStore(known)
    batch_size = settings.KN3_ENUMERATION_BATCH
    k = start

    while len(store) < count and k < budget:
        batch = range(k, min(k + batch_size, budget))
        pending = [build_variant.delay(n, orientable, sample_seed(seed, j)) for j in batch]
        for j, result in zip(batch, pending):
            text = result.get()
            k = j + 1
            if text is None:
                continue
            if store.add(canonicalize(parse_embedding_set(text))):
                logger.debug(f"sample {j} gave class {len(store)}")
            if len(store) >= count:
                break

    exhausted = len(store) < count
    if exhausted:
        logger.warning(f"K_{n}^3: budget of {budget} samples gave {len(store)} of {count} classes")
    else:
        logger.info(f"K_{n}^3: {count} classes after {k} samples")
    return store, k, exhausted


def enumerate_variants(n, orientable=True, count=1, seed=0):
    """
    Pairwise-inequivalent minimum-genus embedding sets of K_n^3, in canonical
    form. Raises BudgetExhausted carrying the partial list when the sampling
    budget runs out first.
    """
    _check_census(n, orientable, count)
    store, _, exhausted = collect_variants(n, orientable, count, seed)
    found = [form.embedding_set() for form in store.forms]
    if exhausted:
        raise BudgetExhausted(f"found {len(found)} of {count} classes", found=found)
    return found


def run_census(n, orientable=True, count=1, seed=0):
    """
    Persistent enumeration. A run is keyed by (n, orientable, seed); a rerun
    reloads its records and continues sampling where the last one stopped.
    Returns the run and its first `count` sets.
    """
    _check_census(n, orientable, count)

    run, created = CensusRun.objects.get_or_create(n=n, orientable=orientable, seed=seed)
    records = list(run.records.all())
    known = [parse_embedding_set(record.text) for record in records]
    if not created:
        logger.info(f"resuming census {run.id} with {len(known)} classes after {run.samples} samples")

    if len(known) < count:
        store, samples, _ = collect_variants(n, orientable, count, seed, known=known, start=run.samples)
        with transaction.atomic():
            for position, form in enumerate(store.forms[len(known):], start=len(known)):
                CensusRecord.objects.create(run=run, position=position, digest=form.digest, text=form.text)
            run.samples = samples
            run.found = len(store)
            run.requested = max(run.requested, count)
            run.exhausted = len(store) < count
            run.save()
        known = [form.embedding_set() for form in store.forms]
    else:
        run.requested = max(run.requested, count)
        run.save(update_fields=["requested", "updated_at"])

    return run, known[:count]


def exhaustive_classes(n):
    """
    Number of equivalence classes of embedding sets of K_n^3, by trying every
    Eulerian circuit (up to rotation and reversal) for T_1, T_2, ... in turn
    and keeping only those compatible with all earlier choices.
    """
    if n % 2:
        raise OddOrder(f"n must be even, got {n}.")
    if n < 4:
        raise InvalidSpec(f"n must be at least 4, got {n}.")
    bound = settings.KN3_EXHAUSTIVE_MAX_ORDER
    if n > bound:
        raise BoundExceeded(f"exhaustive search is limited to n <= {bound}, got n={n}.")

    candidates = {}
    for i in range(1, n + 1):
        representatives = {}
        for circuit in enumerate_eulerian_circuits(n, i):
            representatives.setdefault(canonical_circuit(circuit), circuit)
        candidates[i] = list(representatives.values())
        logger.debug(f"T {i}: {len(candidates[i])} circuits up to rotation and reversal")

    chosen = []

    def extend(i):
        if i > n:
            return 1
        total = 0
        for circuit in candidates[i]:
            if all(is_compatible(earlier, circuit) for earlier in chosen):
                chosen.append(circuit)
                total += extend(i + 1)
                chosen.pop()
        return total

    classes = extend(1)
    logger.info(f"K_{n}^3: {classes} embedding-set classes")
    return classes


### CENSUS FILE

def write_census(embedding_sets):
    """Canonical form of each set, each preceded by its digest line."""
    lines = [CENSUS_HEADER]
    for embedding_set in embedding_sets:
        form = canonicalize(embedding_set)
        lines.append(f"digest {form.digest}")
        lines.append(form.text.rstrip("\n"))
    return "\n".join(lines) + "\n"


def read_census(text):
    """
    Parses a census file, checking every record against its digest line.
    Line numbers in errors refer to the whole file.
    """
    lines = text.splitlines()
    first = next((k for k, line in enumerate(lines) if line.strip()), None)
    if first is None:
        raise FormatError("empty input", line=1)
    check_header(lines[first].strip(), CENSUS_HEADER, CENSUS_PREFIX, first + 1)

    records = []
    for k in range(first + 1, len(lines)):
        line = lines[k].strip()
        if line.startswith("digest"):
            match = DIGEST_LINE.match(line)
            if not match:
                raise FormatError("expected 'digest sha256:<hex>'", line=k + 1)
            records.append((k + 1, match.group(1), []))
        elif records:
            records[-1][2].append(lines[k])
        elif line:
            raise FormatError("record without a digest line", line=k + 1)

    found = []
    for lineno, digest, body in records:
        embedding_set = parse_embedding_set("\n".join(body), first_lineno=lineno + 1)
        actual = canonicalize(embedding_set).digest
        if actual != digest:
            raise FormatError(f"digest mismatch: file says {digest}, record hashes to {actual}", line=lineno)
        found.append(embedding_set)
    return found

