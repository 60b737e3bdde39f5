"""Data models for directed graphs, distances and layered-graph specs."""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..utils.errors import ValidationError


class _Infinity(Enum):
    """Distinguished 'unreachable' distance. Never used in arithmetic."""
    INF = "inf"

    def __repr__(self) -> str:
        return "INF"


INF = _Infinity.INF

Distance = Union[int, _Infinity]
DistanceVector = Tuple[Distance, ...]


def is_finite(d: Distance) -> bool:
    """Check whether a distance is a natural number."""
    return d is not INF


def distance_min(a: Distance, b: Distance) -> Distance:
    """Minimum of two extended-natural distances."""
    if a is INF:
        return b
    if b is INF:
        return a
    return a if a <= b else b


def distance_sort_key(d: Distance, n: int) -> int:
    """Map INF to n so distance tuples order lexicographically."""
    return n if d is INF else d


def format_distance(d: Distance) -> str:
    """Render a distance for CSV output (`inf` for INF)."""
    return "inf" if d is INF else str(d)


@dataclass(frozen=True)
class DirectedGraph:
    """
    Immutable directed graph over dense node ids 0..n-1.

    Adjacency is stored both ways; out_adj[u] holds N+(u) and in_adj[v]
    holds N-(v). No self-loops and no duplicate edges.
    """

    n: int
    out_adj: Tuple[Tuple[int, ...], ...]
    in_adj: Tuple[Tuple[int, ...], ...]
    labels: Optional[Tuple[str, ...]] = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None
    ) -> "DirectedGraph":
        """
        Build a graph from an edge iterable.

        Args:
            n: Node count
            edges: (u, v) pairs with 0 <= u, v < n
            labels: Optional original node labels (id-remap table)

        Returns:
            DirectedGraph

        Raises:
            ValidationError: On self-loops, duplicates or ids out of range
        """
        if n < 0:
            raise ValidationError(f"Node count must be non-negative, got {n}")
        out_lists: List[List[int]] = [[] for _ in range(n)]
        in_lists: List[List[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"Edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValidationError(f"Self-loop on node {u}")
            if (u, v) in seen:
                raise ValidationError(f"Duplicate edge ({u},{v})")
            seen.add((u, v))
            out_lists[u].append(v)
            in_lists[v].append(u)

        if labels is not None and len(labels) != n:
            raise ValidationError("Label table size does not match node count")

        return cls(
            n=n,
            out_adj=tuple(tuple(sorted(a)) for a in out_lists),
            in_adj=tuple(tuple(sorted(a)) for a in in_lists),
            labels=tuple(labels) if labels is not None else None
        )

    @classmethod
    def from_networkx(cls, G: nx.DiGraph, labels: Optional[Sequence[str]] = None) -> "DirectedGraph":
        """
        Build a graph from an nx.DiGraph whose nodes are exactly 0..n-1.

        Edge attributes are ignored.

        Raises:
            ValidationError: On other node ids or self-loops
        """
        n = G.number_of_nodes()
        if set(G.nodes) != set(range(n)):
            raise ValidationError("Graph nodes must be the dense ids 0..n-1")
        return cls.from_edges(n, G.edges(), labels=labels)

    @classmethod
    def empty(cls, n: int) -> "DirectedGraph":
        """Edgeless graph on n nodes."""
        return cls.from_edges(n, [])

    @cached_property
    def nx_graph(self) -> nx.DiGraph:
        """Frozen networkx view, built on first use."""
        G = nx.DiGraph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return nx.freeze(G)

    @property
    def nodes(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        """Edge count."""
        return sum(len(a) for a in self.out_adj)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        """Edges ordered by (source, target)."""
        return [(u, v) for u in range(self.n) for v in self.out_adj[u]]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def label(self, node: int) -> str:
        """Original label of a node, or its id when not remapped."""
        if self.labels is None:
            return str(node)
        return self.labels[node]

    def relabel(self, permutation: Sequence[int]) -> "DirectedGraph":
        """Graph with every node u renamed to permutation[u]."""
        return DirectedGraph.from_edges(
            self.n,
            [(permutation[u], permutation[v]) for u, v in self.edges]
        )


@dataclass(frozen=True)
class LayeredGraphSpec:
    """
    Ordered disjoint non-empty layers R_0..R_t over nodes 0..n-1.

    A spec with a single layer (t = 0) is the null instance: every node
    is isolated.
    """

    n: int
    layers: Tuple[FrozenSet[int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        """Validate layers."""
        if not self.layers:
            raise ValidationError("A layered graph needs at least layer R_0")
        seen: set = set()
        for idx, layer in enumerate(self.layers):
            if not layer:
                raise ValidationError(f"Layer R_{idx} is empty")
            if any(not (0 <= u < self.n) for u in layer):
                raise ValidationError(f"Layer R_{idx} has ids outside 0..{self.n - 1}")
            if seen & layer:
                raise ValidationError(f"Layer R_{idx} overlaps an earlier layer")
            seen |= layer

    @classmethod
    def of(cls, n: int, *layers: Iterable[int]) -> "LayeredGraphSpec":
        """Convenience constructor from plain iterables."""
        return cls(n=n, layers=tuple(frozenset(layer) for layer in layers))

    @classmethod
    def null(cls, n: int) -> "LayeredGraphSpec":
        """Null instance spec: one layer holding every node, no edges."""
        return cls(n=n, layers=(frozenset(range(n)),))

    @property
    def t(self) -> int:
        return len(self.layers) - 1

    @property
    def is_null(self) -> bool:
        return self.t == 0

    @property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        """Hashable, printable layer tuple."""
        return tuple(tuple(sorted(layer)) for layer in self.layers)

    def describe(self) -> str:
        """Compact text form, e.g. `{0}|{1,2}`."""
        return "|".join("{" + ",".join(map(str, layer)) + "}" for layer in self.key)
