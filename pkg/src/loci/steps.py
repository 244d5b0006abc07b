"""Deterministic work counters used for complexity checks instead of wall time."""


class StepCounter:
    """Accumulates elementary steps (pixel or curve-point visits)."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, n=1):
        self.count += n

    def __repr__(self):
        return f"StepCounter({self.count})"


def _tick(counter, n=1):
    if counter is not None:
        counter.count += n
