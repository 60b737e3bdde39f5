"""Forward cascade simulation, live-edge sampling and sequence validation."""

import logging
from typing import FrozenSet, Iterable, List, Tuple

import numpy as np

from ..graph.traversal import bfs_distances
from ..models.cascade import CascadingSequence, SequenceCheck
from ..models.graph import INF, DirectedGraph, Distance
from ..utils.errors import ValidationError
from .model import TriggeringModel, TriggeringWorld
from .rng import RngStream

logger = logging.getLogger(__name__)


def _seed_set(seed_set: Iterable[int], n: int) -> FrozenSet[int]:
    seeds = frozenset(seed_set)
    if not seeds:
        raise ValidationError("Seed set must not be empty")
    if any(not 0 <= s < n for s in seeds):
        raise ValidationError(f"Seed ids must lie in 0..{n - 1}")
    return seeds


def sample_triggering_set(model: TriggeringModel, v: int, rng: RngStream) -> FrozenSet[int]:
    """Draw T(v) from the next values of rng."""
    if not 0 <= v < model.n:
        raise ValidationError(f"Node {v} out of range")
    return model.sample_triggering_set(v, rng.generator)


def sample_live_edge_graph(model: TriggeringModel, rng: RngStream) -> DirectedGraph:
    """
    One joint sample of all triggering sets as a graph.

    Consumes exactly one world key from rng, the same as simulate_cascade,
    so two streams in the same state produce coupled outcomes.
    """
    return TriggeringWorld(model, rng.draw_key()).live_edge_graph()


def simulate_cascade(
    model: TriggeringModel,
    seed_set: Iterable[int],
    rng: RngStream
) -> CascadingSequence:
    """
    Run the triggering-model diffusion forward from seed_set.

    Triggering sets are sampled only for nodes adjacent to the active
    frontier. Node w activates at step t + 1 when T(w) meets Δ_t.

    Args:
        model: Triggering model
        seed_set: Non-empty S_0
        rng: Stream; one world key is drawn from it

    Returns:
        CascadingSequence with activation times

    Raises:
        ValidationError: Empty or out-of-range seed set
    """
    seeds = _seed_set(seed_set, model.n)
    world = TriggeringWorld(model, rng.draw_key())
    out_adj = model.graph.out_adj

    times: List[Distance] = [INF] * model.n
    for s in seeds:
        times[s] = 0
    frontier = sorted(seeds)
    t = 0
    while frontier:
        newly = set(frontier)
        nxt = []
        for u in frontier:
            for w in out_adj[u]:
                if times[w] is INF and not newly.isdisjoint(world.triggering_set(w)):
                    times[w] = t + 1
                    nxt.append(w)
        frontier = nxt
        t += 1

    return CascadingSequence(times=tuple(times))


def bfs_instance_sequence(g: DirectedGraph, seed_set: Iterable[int]) -> CascadingSequence:
    """Deterministic BFS cascade: S_t holds the nodes within distance t of seed_set."""
    seeds = _seed_set(seed_set, g.n)
    return CascadingSequence(times=bfs_distances(g, seeds))


def validate_sequence(g: DirectedGraph, seq: CascadingSequence) -> SequenceCheck:
    """
    Check monotonicity and G-continuity of a cascading sequence.

    Every node activated at step t >= 1 must have an in-neighbor activated
    at step t - 1; the first violation is reported.

    Returns:
        SequenceCheck, truthy when valid
    """
    if seq.n != g.n:
        return SequenceCheck(False, f"sequence covers {seq.n} nodes, graph has {g.n}")
    if not seq.seeds:
        return SequenceCheck(False, "S_0 is empty", step=0)

    for u, d in enumerate(seq.times):
        if d is not INF and not 0 <= d < g.n:
            return SequenceCheck(False, f"node {u} has activation time {d} outside 0..{g.n - 1}",
                                 node=u, step=d)

    for t in range(1, seq.last_step + 1):
        arrived = sorted(seq.delta(t))
        if not arrived:
            return SequenceCheck(False, f"no node activated at step {t} before the cascade ended",
                                 step=t)
        for u in arrived:
            if not any(seq.times[w] == t - 1 for w in g.in_adj[u]):
                return SequenceCheck(
                    False,
                    f"node {u} activated at step {t} with no in-neighbor activated at step {t - 1}",
                    node=u,
                    step=t
                )
    return SequenceCheck(True)


def estimate_spread(
    model: TriggeringModel,
    seed_set: Iterable[int],
    runs: int,
    rng: RngStream
) -> Tuple[float, float]:
    """
    Monte Carlo influence spread σ(S).

    Returns:
        (mean final active-set size, standard error of the mean)
    """
    if runs < 1:
        raise ValidationError("runs must be at least 1")
    seeds = _seed_set(seed_set, model.n)
    sizes = np.empty(runs, dtype=np.float64)
    for r in range(runs):
        seq = simulate_cascade(model, seeds, rng)
        sizes[r] = sum(1 for d in seq.times if d is not INF)
    stderr = float(sizes.std(ddof=1) / np.sqrt(runs)) if runs > 1 else 0.0
    logger.debug(f"Spread of {sorted(seeds)} over {runs} runs: {sizes.mean():.4f} ± {stderr:.4f}")
    return float(sizes.mean()), stderr
