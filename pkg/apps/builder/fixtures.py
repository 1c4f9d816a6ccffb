from functools import lru_cache
from pathlib import Path

from .formats import parse_embedding_set

DATA_DIR = Path(__file__).resolve().parent / "data"

# Embedding sets transcribed from the printed constructions. T 4 to T 6 of the
# non-strong K_6^3 set are a recomputed completion: the printed circuits
# disagree at transition 4,6,5 between T 2 and T 6.
BASE_SETS = {
    "orientable_4": "orientable_4.txt",
    "orientable_6": "orientable_6.txt",
    "nonorientable_6": "nonorientable_6.txt",
    "multi_nonorientable_4": "multi_nonorientable_4.txt",
}


@lru_cache(maxsize=None)
def base_set(kind):
    """
    Returns a stored embedding set: the planar K_4^3 set, the strong and the
    non-strong K_6^3 sets, or the Klein-bottle set of 2K_4^3.
    """
    try:
        filename = BASE_SETS[kind]
    except KeyError:
        raise ValueError(f"Unknown base set '{kind}'. Choose from {sorted(BASE_SETS)}.")
    return parse_embedding_set((DATA_DIR / filename).read_text())
