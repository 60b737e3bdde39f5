"""Sequence index, layered-graph basis elements and exact influence profiles."""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import FrozenSet, Iterator, List, Tuple

from ..diffusion.enumeration import DEFAULT_MAX_OUTCOMES
from ..graph.traversal import bfs_distances, build_layered_graph
from ..models.graph import INF, DirectedGraph, LayeredGraphSpec
from ..models.profile import ProfileVector, SequenceIndex
from ..utils.errors import SizeGuardError, ValidationError

logger = logging.getLogger(__name__)

MAX_SEQUENCE_N = 5


def _guard(n: int) -> None:
    if n < 0:
        raise ValidationError("n must be non-negative")
    if n > MAX_SEQUENCE_N:
        raise SizeGuardError(
            f"n={n} is too large for sequence enumeration (at most {MAX_SEQUENCE_N})"
        )


def nonempty_subsets(n: int) -> Iterator[FrozenSet[int]]:
    """All non-empty subsets of 0..n-1 in bitmask order."""
    for mask in range(1, 1 << n):
        yield frozenset(u for u in range(n) if mask >> u & 1)


@lru_cache(maxsize=None)
def enumerate_sequences(n: int) -> SequenceIndex:
    """
    Index every monotone, non-stationary set sequence on n nodes.

    A sequence is its activation-time vector: levels 0..T are all
    non-empty, T >= 1, remaining nodes are INF. Order is lexicographic
    with INF sorting last.

    Raises:
        SizeGuardError: n above 5
    """
    _guard(n)
    sequences = []
    for raw in product(range(n + 1), repeat=n):
        used = {d for d in raw if d < n}
        if len(used) < 2 or used != set(range(len(used))):
            continue
        sequences.append(tuple(INF if d == n else d for d in raw))

    logger.debug(f"Sequence index for n={n}: M={len(sequences)}")
    return SequenceIndex(
        n=n,
        sequences=tuple(sequences),
        positions={seq: pos for pos, seq in enumerate(sequences)}
    )


def _layer_chains(remaining: int, n: int) -> Iterator[Tuple[FrozenSet[int], ...]]:
    """Every ordered tuple of disjoint non-empty layers drawn from the bitmask remaining."""
    subset = remaining
    while subset:
        layer = frozenset(u for u in range(n) if subset >> u & 1)
        yield (layer,)
        for rest in _layer_chains(remaining & ~subset, n):
            yield (layer,) + rest
        subset = (subset - 1) & remaining


def enumerate_layered_instances(n: int) -> List[LayeredGraphSpec]:
    """
    All non-trivial layered-graph specs (t >= 1) on n nodes.

    Specs are ordered tuples of at least two disjoint non-empty layers;
    nodes outside every layer stay isolated.

    Raises:
        SizeGuardError: n above 5
    """
    _guard(n)
    specs = [
        LayeredGraphSpec(n=n, layers=layers)
        for layers in _layer_chains((1 << n) - 1, n)
        if len(layers) >= 2
    ]
    return sorted(specs, key=lambda spec: spec.key)


def layered_instance_vector(spec: LayeredGraphSpec, index: SequenceIndex) -> ProfileVector:
    """
    Profile of the BFS instance of a layered graph.

    Each seed set contributes a 1 at its BFS sequence, unless that
    sequence is stationary.
    """
    if spec.n != index.n:
        raise ValidationError(f"Spec has n={spec.n}, index has n={index.n}")
    return graph_profile(build_layered_graph(spec), index)


def graph_profile(graph: DirectedGraph, index: SequenceIndex) -> ProfileVector:
    """Profile of the BFS instance of any graph (one sequence per seed)."""
    if graph.n != index.n:
        raise ValidationError(f"Graph has n={graph.n}, index has n={index.n}")
    values = [0] * len(index)
    for seed in nonempty_subsets(index.n):
        pos = index.position(bfs_distances(graph, seed))
        if pos is not None:
            values[pos] = 1
    return ProfileVector(index=index, values=values)


def exact_profile(
    model,
    index: SequenceIndex,
    max_outcomes: int = DEFAULT_MAX_OUTCOMES,
    exact: bool = False
) -> ProfileVector:
    """
    Exact influence profile by enumerating the model's randomness.

    Args:
        model: TriggeringModel or MixtureInstance
        index: Sequence index for model.n
        max_outcomes: Outcome limit passed to the enumerator
        exact: Fraction entries instead of floats

    Raises:
        SizeGuardError: Randomness too large to enumerate
        ValidationError: Dimension mismatch
    """
    if model.n != index.n:
        raise ValidationError(f"Model has n={model.n}, index has n={index.n}")
    values = [Fraction(0) if exact else 0.0] * len(index)
    seeds = list(nonempty_subsets(index.n))
    for prob, live in model.outcomes(max_outcomes=max_outcomes, exact=exact):
        for seed in seeds:
            pos = index.position(bfs_distances(live, seed))
            if pos is not None:
                values[pos] += prob
    return ProfileVector(index=index, values=values)
