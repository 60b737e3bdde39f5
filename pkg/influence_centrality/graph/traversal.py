"""Breadth-first distances and layered-graph construction."""

from itertools import product
from typing import Dict, Iterable

import networkx as nx

from ..models.graph import INF, DirectedGraph, DistanceVector, LayeredGraphSpec
from ..utils.errors import ValidationError


def _as_vector(lengths: Dict[int, int], n: int) -> DistanceVector:
    return tuple(lengths.get(v, INF) for v in range(n))


def bfs_distances(g: DirectedGraph, sources: Iterable[int]) -> DistanceVector:
    """
    Shortest directed path length from a source set to every node.

    d[v] = min over sources s of d_G(s, v); sources get 0 and unreachable
    nodes get INF.

    Args:
        g: Graph
        sources: Non-empty node set

    Returns:
        Distance vector of length g.n

    Raises:
        ValidationError: Empty source set or ids out of range
    """
    sources = set(sources)
    if not sources:
        raise ValidationError("BFS needs at least one source")
    if any(not (0 <= s < g.n) for s in sources):
        raise ValidationError(f"Source ids must lie in 0..{g.n - 1}")
    if len(sources) == 1:
        lengths = nx.single_source_shortest_path_length(g.nx_graph, next(iter(sources)))
    else:
        # Unit weights: the view carries no edge attributes
        lengths = nx.multi_source_dijkstra_path_length(g.nx_graph, sources)
    return _as_vector(lengths, g.n)


def reverse_bfs_distances(g: DirectedGraph, target: int) -> DistanceVector:
    """Distance from every node to target (BFS over in-edges)."""
    if not 0 <= target < g.n:
        raise ValidationError(f"Target id must lie in 0..{g.n - 1}")
    lengths = nx.single_source_shortest_path_length(g.nx_graph.reverse(copy=False), target)
    return _as_vector(lengths, g.n)


def build_layered_graph(spec: LayeredGraphSpec) -> DirectedGraph:
    """
    Graph whose edges fully connect consecutive layers.

    Edges are exactly R_{i-1} x R_i for i = 1..t; nodes outside the layers,
    and every node of the null spec, are isolated.
    """
    G = nx.DiGraph()
    G.add_nodes_from(range(spec.n))
    for upper, lower in zip(spec.layers, spec.layers[1:]):
        G.add_edges_from(product(sorted(upper), sorted(lower)))
    return DirectedGraph.from_networkx(G)
