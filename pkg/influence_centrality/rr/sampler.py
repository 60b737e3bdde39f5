"""Reverse-reachable set sampling."""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from ..diffusion.model import TriggeringModel
from ..diffusion.rng import RngStream
from ..utils.errors import ValidationError


@dataclass(frozen=True)
class RRSet:
    """
    Nodes that reach root in one reverse sample, with their distance to it.

    dist[root] = 0 and dist[u] is the reverse-BFS depth of u, i.e. the
    graph distance from u to root in the sampled subgraph.
    """

    root: int
    dist: Dict[int, int]

    def __len__(self) -> int:
        return len(self.dist)

    def __contains__(self, node: int) -> bool:
        return node in self.dist

    @property
    def depth(self) -> int:
        """Δ, the largest level."""
        return max(self.dist.values())

    @property
    def level_sizes(self) -> List[int]:
        """Number of nodes at each level 0..Δ."""
        sizes = [0] * (self.depth + 1)
        for level in self.dist.values():
            sizes[level] += 1
        return sizes

    def suffix_counts(self) -> List[int]:
        """s_i = |{u : dist[u] >= i}| for i = 0..Δ+1."""
        sizes = self.level_sizes
        suffix = [0] * (len(sizes) + 1)
        for i in range(len(sizes) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + sizes[i]
        return suffix

    def format(self, labels: Optional[Sequence[str]] = None) -> str:
        """Dump line `root | u:dist,u:dist,...` in node-id order, using labels when given."""
        def name(u: int) -> str:
            return labels[u] if labels else str(u)

        body = ",".join(f"{name(u)}:{d}" for u, d in sorted(self.dist.items()))
        return f"{name(self.root)} | {body}"


def sample_rr_set(
    model: TriggeringModel,
    rng: RngStream,
    root: Optional[int] = None
) -> RRSet:
    """
    Sample one RR set by reverse BFS over sampled triggering sets.

    Args:
        model: Triggering model
        rng: Stream supplying the root (when not given) and the triggering sets
        root: Fixed root; uniform over nodes when None

    Returns:
        RRSet with shortest reverse distances
    """
    if model.n == 0:
        raise ValidationError("Cannot sample RR sets on an empty graph")
    if root is None:
        root = rng.integers(0, model.n)
    elif not 0 <= root < model.n:
        raise ValidationError(f"Root {root} out of range")

    generator = rng.generator
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in sorted(model.sample_triggering_set(u, generator)):
            if w not in dist:
                dist[w] = du
                queue.append(w)
    return RRSet(root=root, dist=dist)
