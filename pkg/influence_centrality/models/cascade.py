"""Data model for cascading sequences."""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional

from .graph import INF, Distance, DistanceVector


@dataclass(frozen=True)
class CascadingSequence:
    """
    One diffusion trace S_0 ⊆ S_1 ⊆ ... ⊆ S_{n-1}.

    Stored as the activation time (cascading distance) of every node:
    S_t = {u : times[u] <= t}. Unreached nodes hold INF.
    """

    times: DistanceVector

    @property
    def n(self) -> int:
        return len(self.times)

    @property
    def seeds(self) -> FrozenSet[int]:
        return self.step(0)

    @property
    def last_step(self) -> int:
        """Largest finite activation time (0 for a stationary sequence)."""
        finite = [d for d in self.times if d is not INF]
        return max(finite) if finite else 0

    @property
    def is_stationary(self) -> bool:
        """S_0 = S_1 = ... : nothing beyond the seeds activates."""
        return self.last_step == 0

    def step(self, t: int) -> FrozenSet[int]:
        """Active set S_t."""
        return frozenset(u for u, d in enumerate(self.times) if d is not INF and d <= t)

    def delta(self, t: int) -> FrozenSet[int]:
        """Newly activated nodes Δ_t."""
        return frozenset(u for u, d in enumerate(self.times) if d == t)

    def sets(self) -> List[FrozenSet[int]]:
        """Full set view S_0..S_{n-1}."""
        return [self.step(t) for t in range(max(self.n, 1))]

    def time_of(self, node: int) -> Distance:
        return self.times[node]

    @classmethod
    def from_sets(cls, n: int, sets: List[FrozenSet[int]]) -> "CascadingSequence":
        """
        Build from an explicit set list; the first step containing a node
        defines its activation time.
        """
        times: List[Distance] = [INF] * n
        for t, active in enumerate(sets):
            for u in active:
                if times[u] is INF:
                    times[u] = t
        return cls(times=tuple(times))


@dataclass(frozen=True)
class SequenceCheck:
    """Outcome of validating a cascading sequence against a graph."""

    valid: bool
    message: str = "ok"
    node: Optional[int] = None
    step: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid

