from celery import shared_task

import logging

from apps.builder.formats import format_embedding_set
from apps.builder.induction import build_even
from apps.scheme.embedding import minimum_genus_failure

logger = logging.getLogger(__name__)


@shared_task
def build_variant(n, orientable, seed):
    """
    Builds one seeded embedding set of K_n^3 and returns its text once it has
    been verified, or None.
    """
    try:
        embedding_set = build_even(n, orientable=orientable, seed=seed)
        failure = minimum_genus_failure(embedding_set, orientable)
        if failure:
            logger.error(f"Seed {seed} for K_{n}^3 gave a bad embedding set: {failure}")
            return None
        return format_embedding_set(embedding_set)
    except Exception as e:
        logger.error(f"Error building K_{n}^3 with seed {seed}: {str(e)}")
        return None
