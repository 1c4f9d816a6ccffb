import uuid

from django.db import models
from django.utils import timezone


class CensusRun(models.Model):
    """
    One enumeration, identified by (n, orientability, seed). `samples` is how
    many seeded builds were drawn, so a rerun picks up where this one stopped.
    """

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)

    n = models.PositiveIntegerField()
    orientable = models.BooleanField(default=True)
    seed = models.BigIntegerField(default=0)

    requested = models.PositiveIntegerField(default=0)
    samples = models.PositiveIntegerField(default=0)
    found = models.PositiveIntegerField(default=0)
    exhausted = models.BooleanField(default=False)

    created_at = models.DateTimeField(default=timezone.now)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        unique_together = ("n", "orientable", "seed")
        ordering = ["-created_at"]

    def __str__(self):
        kind = "orientable" if self.orientable else "non-orientable"
        return f"K_{self.n}^3 {kind} seed={self.seed}: {self.found}/{self.requested}"


class CensusRecord(models.Model):

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    run = models.ForeignKey(CensusRun, on_delete=models.CASCADE, related_name="records")

    position = models.PositiveIntegerField()
    digest = models.CharField(max_length=80)
    text = models.TextField()

    created_at = models.DateTimeField(default=timezone.now)

    class Meta:
        unique_together = ("run", "digest")
        ordering = ["position"]

    def __str__(self):
        return f"#{self.position} {self.digest[:19]}"
