import hashlib
import random


def make_rng(seed):
    """A private `random.Random`; `None` gives an unseeded generator."""
    return random.Random(seed)


def derive_seed(seed, *labels):
    """
    Stable child seed for a labelled sub-computation, independent of
    PYTHONHASHSEED and of the order in which siblings are drawn.
    """
    material = ":".join(str(part) for part in (seed, *labels))
    return int.from_bytes(hashlib.sha256(material.encode("utf-8")).digest()[:8], "big")
