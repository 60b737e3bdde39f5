"""Shared fixtures: the four-layer example graph, small IC instances, RNG helpers."""

import numpy as np
import pytest

from influence_centrality.diffusion.model import TriggeringModel
from influence_centrality.graph.traversal import build_layered_graph
from influence_centrality.models.graph import DirectedGraph, LayeredGraphSpec

# Layers R0={0,1}, R1={2,3,4}, R2={5,6}, R3={7,8,9}
LAYERS = ({0, 1}, {2, 3, 4}, {5, 6}, {7, 8, 9})


@pytest.fixture
def layered_spec() -> LayeredGraphSpec:
    return LayeredGraphSpec.of(10, *LAYERS)


@pytest.fixture
def layered_graph(layered_spec) -> DirectedGraph:
    return build_layered_graph(layered_spec)


@pytest.fixture
def path_graph() -> DirectedGraph:
    """0 -> 1 -> 2."""
    return DirectedGraph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def single_edge_model() -> TriggeringModel:
    """Edge (0, 1) live with probability 1/2."""
    graph = DirectedGraph.from_edges(2, [(0, 1)])
    return TriggeringModel.independent_cascade(graph, {(0, 1): 0.5})


def random_graph(rng: np.random.Generator, n: int, m: int) -> DirectedGraph:
    """Uniform simple digraph with min(m, n(n-1)) edges."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    m = min(m, len(pairs))
    chosen = rng.choice(len(pairs), size=m, replace=False) if m else []
    return DirectedGraph.from_edges(n, [pairs[i] for i in sorted(chosen)])


def random_ic(rng: np.random.Generator, n: int, m: int, dyadic: bool = False) -> TriggeringModel:
    """
    Random IC instance.

    With dyadic=True probabilities are drawn from {1/4, 1/2, 3/4}, which
    are exact binary fractions.
    """
    graph = random_graph(rng, n, m)
    if dyadic:
        probs = {e: float(rng.choice([0.25, 0.5, 0.75])) for e in graph.edges}
    else:
        probs = {e: float(rng.uniform(0.05, 0.95)) for e in graph.edges}
    return TriggeringModel.independent_cascade(graph, probs)


def random_lt(rng: np.random.Generator, n: int, m: int) -> TriggeringModel:
    """Random LT instance with incoming weights summing to at most 0.9."""
    graph = random_graph(rng, n, m)
    weights = {}
    for v in graph.nodes:
        in_nbrs = graph.in_adj[v]
        if in_nbrs:
            raw = rng.dirichlet(np.ones(len(in_nbrs))) * 0.9
            weights.update({(u, v): float(w) for u, w in zip(in_nbrs, raw)})
    return TriggeringModel.linear_threshold(graph, weights)


def random_explicit(rng: np.random.Generator, n: int, m: int) -> TriggeringModel:
    """Random explicit model: up to three subsets of N-(v) per node, Dirichlet probabilities."""
    graph = random_graph(rng, n, m)
    distributions = {}
    for v in graph.nodes:
        in_nbrs = graph.in_adj[v]
        if not in_nbrs:
            continue
        masks = rng.choice(1 << len(in_nbrs), size=min(3, 1 << len(in_nbrs)), replace=False)
        probs = rng.dirichlet(np.ones(len(masks)))
        distributions[v] = [
            (frozenset(u for i, u in enumerate(in_nbrs) if int(mask) >> i & 1), float(p))
            for mask, p in zip(masks, probs)
        ]
    return TriggeringModel.explicit(graph, distributions)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)
