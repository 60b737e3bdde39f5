"""Per-RR-set contributions to individual, Shapley and group estimates."""

from typing import Dict, Iterable

from ..centrality.functions import NodeWiseFunction
from ..centrality.shapley import level_shapley
from .sampler import RRSet


def rr_individual_contribution(rr: RRSet, g: NodeWiseFunction) -> Dict[int, float]:
    """g(d(u, root)) for every u in the RR set; nodes outside contribute 0."""
    return {u: g(d) for u, d in rr.dist.items()}


def rr_shapley_values(rr: RRSet, g: NodeWiseFunction, exact: bool = False) -> Dict[int, float]:
    """Shapley values of S -> g(d(S, root)) for every u in the RR set, in one pass."""
    return level_shapley(rr.dist, g, exact=exact)


def rr_group_contribution(rr: RRSet, g: NodeWiseFunction, group: Iterable[int]) -> float:
    """g of the smallest distance from a group member to the root (g(INF) = 0 when none is present)."""
    levels = [rr.dist[u] for u in group if u in rr.dist]
    return g(min(levels)) if levels else 0.0
