"""Shapley-value oracles for set functions over node groups."""

import logging
from fractions import Fraction
from itertools import permutations
from math import comb
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..models.graph import Distance
from ..utils.errors import ValidationError
from .functions import NodeWiseFunction

logger = logging.getLogger(__name__)

Value = Union[float, Fraction]


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def shapley_from_group_values(
    n: int,
    values: Sequence[Value],
    coalition_limit: Optional[int] = None
) -> List[Value]:
    """
    Exact Shapley values from the value of every subset.

    values[mask] is the group value of the node set encoded by mask (bit u
    for node u). Subset S ⊆ V \\ {v} carries weight |S|!(n-|S|-1)!/n!.
    With coalition_limit c only predecessor sets with |S| < c count, each
    size equally likely (the truncated Shapley value).

    Args:
        n: Player count
        values: 2^n group values, values[0] being the empty group
        coalition_limit: c >= 1, or None for the ordinary Shapley value

    Returns:
        φ_v for v in 0..n-1
    """
    if len(values) != 1 << n:
        raise ValidationError(f"Expected {1 << n} group values, got {len(values)}")
    if coalition_limit is not None and coalition_limit < 1:
        raise ValidationError("coalition_limit must be at least 1")

    sizes = n if coalition_limit is None else min(coalition_limit, n)
    exact = all(isinstance(v, (Fraction, int)) for v in values)
    weights = []
    for s in range(n):
        w = Fraction(1, sizes * comb(n - 1, s)) if n and s < sizes else Fraction(0)
        weights.append(w if exact else float(w))

    phi: List[Value] = []
    for v in range(n):
        bit = 1 << v
        total: Value = Fraction(0) if exact else 0.0
        for mask in range(1 << n):
            if mask & bit:
                continue
            w = weights[_popcount(mask)]
            if w:
                total += w * (values[mask | bit] - values[mask])
        phi.append(total)
    return phi


def permutation_enumeration_shapley(
    players: Sequence[int],
    value: Callable[[FrozenSet[int]], Value]
) -> Dict[int, Value]:
    """
    Shapley values by averaging marginal contributions over all |players|! orders.

    Only usable for a handful of players; serves as the reference oracle.
    """
    players = list(players)
    if len(players) > 9:
        raise ValidationError("Permutation enumeration is limited to 9 players")
    cache: Dict[FrozenSet[int], Value] = {}

    def v(coalition: FrozenSet[int]) -> Value:
        if coalition not in cache:
            cache[coalition] = value(coalition)
        return cache[coalition]

    totals: Dict[int, Value] = {u: 0 for u in players}
    count = 0
    for order in permutations(players):
        before: FrozenSet[int] = frozenset()
        for u in order:
            after = before | {u}
            totals[u] += v(after) - v(before)
            before = after
        count += 1
    return {u: total / count for u, total in totals.items()}


def monte_carlo_shapley(
    n: int,
    value: Callable[[FrozenSet[int]], float],
    samples: int,
    generator: np.random.Generator
) -> Tuple[List[float], List[float]]:
    """
    Shapley estimate from uniformly random permutations.

    Returns:
        (means, standard errors) per node
    """
    if samples < 2:
        raise ValidationError("Monte Carlo Shapley needs at least 2 permutations")
    cache: Dict[FrozenSet[int], float] = {}
    contributions = np.zeros((samples, n), dtype=np.float64)
    for row in range(samples):
        before: FrozenSet[int] = frozenset()
        prev = 0.0
        for u in generator.permutation(n):
            after = before | {int(u)}
            if after not in cache:
                cache[after] = value(after)
            contributions[row, u] = cache[after] - prev
            before, prev = after, cache[after]
    means = contributions.mean(axis=0)
    stderr = contributions.std(axis=0, ddof=1) / np.sqrt(samples)
    logger.debug(f"Monte Carlo Shapley over {samples} permutations, max stderr {stderr.max():.4g}")
    return means.tolist(), stderr.tolist()


def level_shapley(
    dist: Mapping[int, Distance],
    g: NodeWiseFunction,
    exact: bool = False
) -> Dict[int, Value]:
    """
    Shapley values of the game S -> g(min_{u in S} dist[u]) in O(|dist|).

    dist maps each player to its level (the root at 0); players outside
    the map never change the game and get 0. With r players and s_i the
    number of players at level >= i (s_{Δ+1} = 0), a player at level k gets

        g(k) / (r - s_{k+1}) - Σ_{k<i<=Δ} g(i) (1/(r - s_i) - 1/(r - s_{i+1}))

    Args:
        dist: Player -> finite level
        g: Node-wise function
        exact: Fraction arithmetic instead of floats
    """
    r = len(dist)
    if r == 0:
        return {}
    depth = max(dist.values())
    counts = [0] * (depth + 2)
    for level in dist.values():
        counts[level] += 1
    suffix = [0] * (depth + 2)
    for i in range(depth, -1, -1):
        suffix[i] = suffix[i + 1] + counts[i]

    num = Fraction if exact else float
    one = num(1)

    def g_at(level: int):
        return num(g(level))

    # tail[k] = Σ_{k<i<=Δ} g(i) * w_i
    tail = [num(0)] * (depth + 2)
    for i in range(depth, 0, -1):
        w_i = one / (r - suffix[i]) - one / (r - suffix[i + 1])
        tail[i - 1] = tail[i] + g_at(i) * w_i

    per_level = [g_at(k) / (r - suffix[k + 1]) - tail[k] for k in range(depth + 1)]
    return {u: per_level[level] for u, level in dist.items()}
