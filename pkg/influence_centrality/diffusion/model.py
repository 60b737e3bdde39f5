"""Triggering models: IC, LT and explicit triggering-set distributions."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..models.graph import DirectedGraph
from ..utils.errors import SizeGuardError, ValidationError
from .rng import keyed_generator

logger = logging.getLogger(__name__)

LT_SUM_TOLERANCE = 1e-12
EXPLICIT_SUM_TOLERANCE = 1e-9
MAX_EXPLICIT_IN_DEGREE = 20

Distribution = Tuple[Tuple[FrozenSet[int], float], ...]


class ModelValidationError(ValidationError):
    """Triggering-model parameters violate their invariants."""


class ModelKind(Enum):
    """Diffusion model family."""
    IC = "ic"
    LT = "lt"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class TriggeringModel:
    """
    Per-node random triggering-set distributions over a directed graph.

    For IC and LT, edge_weights[v][j] is the probability / weight of the
    edge from graph.in_adj[v][j] into v. Explicit models carry one finite
    distribution over subsets of N-(v) per node.
    """

    graph: DirectedGraph
    kind: ModelKind
    edge_weights: Tuple[Tuple[float, ...], ...] = field(default_factory=tuple)
    distributions: Tuple[Distribution, ...] = field(default_factory=tuple)

    def __post_init__(self):
        """Validate model invariants."""
        g = self.graph
        if self.kind in (ModelKind.IC, ModelKind.LT):
            if len(self.edge_weights) != g.n or any(
                len(w) != len(g.in_adj[v]) for v, w in enumerate(self.edge_weights)
            ):
                raise ModelValidationError("Edge weights do not align with the graph")
            for v, weights in enumerate(self.edge_weights):
                if any(not 0.0 <= w <= 1.0 for w in weights):
                    raise ModelValidationError(f"Node {v}: edge weight outside [0,1]")
                if self.kind is ModelKind.LT and math.fsum(weights) > 1.0 + LT_SUM_TOLERANCE:
                    raise ModelValidationError(
                        f"Node {v}: incoming LT weights sum to {math.fsum(weights):.6g} > 1"
                    )
        else:
            if len(self.distributions) != g.n:
                raise ModelValidationError("One distribution per node is required")
            for v, dist in enumerate(self.distributions):
                self._validate_distribution(v, dist)

    def _validate_distribution(self, v: int, dist: Distribution) -> None:
        in_set = frozenset(self.graph.in_adj[v])
        if len(in_set) > MAX_EXPLICIT_IN_DEGREE:
            raise ModelValidationError(
                f"Node {v}: explicit distributions support in-degree <= {MAX_EXPLICIT_IN_DEGREE}"
            )
        supports = [members for members, _ in dist]
        if len(set(supports)) != len(supports):
            raise ModelValidationError(f"Node {v}: a subset is listed twice")
        for members, prob in dist:
            if prob < 0:
                raise ModelValidationError(f"Node {v}: negative probability")
            if not members <= in_set:
                raise ModelValidationError(
                    f"Node {v}: triggering set {sorted(members)} is not within N-(v)"
                )
        total = math.fsum(prob for _, prob in dist)
        if abs(total - 1.0) > EXPLICIT_SUM_TOLERANCE:
            raise ModelValidationError(f"Node {v}: probabilities sum to {total:.12g}, not 1")

    # Constructors

    @classmethod
    def independent_cascade(
        cls,
        graph: DirectedGraph,
        probabilities: Optional[Mapping[Tuple[int, int], float]] = None,
        default: float = 0.1
    ) -> "TriggeringModel":
        """
        IC model; edges missing from probabilities use default.

        Args:
            graph: Graph
            probabilities: Per-edge activation probability p_uv
            default: Probability for unlisted edges
        """
        probabilities = probabilities or {}
        weights = tuple(
            tuple(probabilities.get((u, v), default) for u in graph.in_adj[v])
            for v in graph.nodes
        )
        return cls(graph=graph, kind=ModelKind.IC, edge_weights=weights)

    @classmethod
    def linear_threshold(
        cls,
        graph: DirectedGraph,
        weights: Optional[Mapping[Tuple[int, int], float]] = None
    ) -> "TriggeringModel":
        """
        LT model in its triggering-set form.

        Without explicit weights every in-edge of v gets 1 / in-degree(v).
        """
        if weights is None:
            edge_weights = tuple(
                tuple(1.0 / len(graph.in_adj[v]) for _ in graph.in_adj[v])
                for v in graph.nodes
            )
        else:
            edge_weights = tuple(
                tuple(weights.get((u, v), 0.0) for u in graph.in_adj[v])
                for v in graph.nodes
            )
        return cls(graph=graph, kind=ModelKind.LT, edge_weights=edge_weights)

    @classmethod
    def explicit(
        cls,
        graph: DirectedGraph,
        distributions: Mapping[int, Sequence[Tuple[FrozenSet[int], float]]]
    ) -> "TriggeringModel":
        """Explicit model; nodes without a distribution never activate via edges."""
        dists = tuple(
            tuple((frozenset(members), float(prob)) for members, prob in distributions[v])
            if v in distributions else ((frozenset(), 1.0),)
            for v in graph.nodes
        )
        return cls(graph=graph, kind=ModelKind.EXPLICIT, distributions=dists)

    @classmethod
    def bfs_instance(cls, graph: DirectedGraph) -> "TriggeringModel":
        """IC model with every edge certain: the deterministic BFS instance of graph."""
        return cls.independent_cascade(graph, default=1.0)

    # Accessors

    @property
    def n(self) -> int:
        return self.graph.n

    def edge_weight(self, u: int, v: int) -> float:
        """p_uv (IC) or b_uv (LT)."""
        in_nbrs = self.graph.in_adj[v]
        if u not in in_nbrs:
            raise KeyError((u, v))
        return self.edge_weights[v][in_nbrs.index(u)]

    def describe(self) -> str:
        return f"{self.kind.value}(n={self.n}, m={self.graph.m})"

    # Sampling

    def sample_triggering_set(self, v: int, generator: np.random.Generator) -> FrozenSet[int]:
        """
        Draw T(v).

        IC includes each in-neighbor independently; LT picks at most one
        in-neighbor u with probability b_uv; explicit draws from the list.
        """
        in_nbrs = self.graph.in_adj[v]
        if self.kind is ModelKind.IC:
            if not in_nbrs:
                return frozenset()
            draws = generator.random(len(in_nbrs))
            return frozenset(
                u for u, p, r in zip(in_nbrs, self.edge_weights[v], draws) if r < p
            )

        r = generator.random()
        if self.kind is ModelKind.LT:
            acc = 0.0
            for u, b in zip(in_nbrs, self.edge_weights[v]):
                acc += b
                if r < acc:
                    return frozenset((u,))
            return frozenset()

        acc = 0.0
        dist = self.distributions[v]
        for members, prob in dist:
            acc += prob
            if r < acc:
                return members
        # Rounding slack in the cumulative sum
        return dist[-1][0]

    def triggering_distribution(self, v: int, exact: bool = False) -> Distribution:
        """
        Full support of T(v) with probabilities; zero-probability sets omitted.

        With exact=True probabilities are Fractions (exact for the binary
        floats the model stores).

        Raises:
            SizeGuardError: IC node with more than 20 uncertain in-edges
        """
        num = Fraction if exact else float
        in_nbrs = self.graph.in_adj[v]
        if self.kind is ModelKind.EXPLICIT:
            return tuple((m, num(p)) for m, p in self.distributions[v] if p > 0)

        if self.kind is ModelKind.LT:
            options = [
                (frozenset((u,)), num(b)) for u, b in zip(in_nbrs, self.edge_weights[v]) if b > 0
            ]
            rest = 1 - sum((num(b) for b in self.edge_weights[v]), num(0))
            if rest > LT_SUM_TOLERANCE:
                options.append((frozenset(), rest))
            return tuple(options)

        certain = frozenset(u for u, p in zip(in_nbrs, self.edge_weights[v]) if p >= 1.0)
        uncertain = [
            (u, num(p)) for u, p in zip(in_nbrs, self.edge_weights[v]) if 0.0 < p < 1.0
        ]
        if len(uncertain) > MAX_EXPLICIT_IN_DEGREE:
            raise SizeGuardError(f"Node {v} has too many uncertain in-edges to enumerate")
        options = []
        for size in range(len(uncertain) + 1):
            for chosen in combinations(range(len(uncertain)), size):
                prob = num(1)
                for j, (_, p) in enumerate(uncertain):
                    prob *= p if j in chosen else (1 - p)
                members = certain | frozenset(uncertain[j][0] for j in chosen)
                options.append((members, prob))
        return tuple(options)

    def support_size(self, v: int) -> int:
        """Number of outcomes of T(v) with positive probability."""
        if self.kind is ModelKind.IC:
            return 2 ** sum(1 for p in self.edge_weights[v] if 0.0 < p < 1.0)
        return len(self.triggering_distribution(v))

    def joint_support_size(self) -> int:
        return math.prod(self.support_size(v) for v in self.graph.nodes)

    def relabel(self, permutation: Sequence[int]) -> "TriggeringModel":
        """Model with every node u renamed to permutation[u]."""
        if sorted(permutation) != list(range(self.n)):
            raise ValidationError("Relabeling needs a permutation of 0..n-1")
        graph = self.graph.relabel(permutation)
        if self.kind is ModelKind.EXPLICIT:
            return TriggeringModel.explicit(graph, {
                permutation[v]: [
                    (frozenset(permutation[u] for u in members), p)
                    for members, p in self.distributions[v]
                ]
                for v in self.graph.nodes
            })
        mapped = {
            (permutation[u], permutation[v]): w
            for v in self.graph.nodes
            for u, w in zip(self.graph.in_adj[v], self.edge_weights[v])
        }
        if self.kind is ModelKind.IC:
            return TriggeringModel.independent_cascade(graph, mapped, default=0.0)
        return TriggeringModel.linear_threshold(graph, mapped)

    def outcomes(self, max_outcomes: int = 2 ** 16, exact: bool = False):
        """Enumerate (probability, live-edge graph) pairs; see enumeration.enumerate_outcomes."""
        from .enumeration import enumerate_outcomes
        return enumerate_outcomes(self, max_outcomes=max_outcomes, exact=exact)


class TriggeringWorld:
    """
    One joint draw of all triggering sets, realised lazily.

    Each node's set comes from a generator keyed by (world key, node) and
    is memoized, so any visiting order sees the same live-edge graph.
    """

    def __init__(self, model: TriggeringModel, key: int):
        self.model = model
        self.key = key
        self._sets: Dict[int, FrozenSet[int]] = {}

    def triggering_set(self, v: int) -> FrozenSet[int]:
        if v not in self._sets:
            self._sets[v] = self.model.sample_triggering_set(v, keyed_generator(self.key, v))
        return self._sets[v]

    def live_edge_graph(self) -> DirectedGraph:
        """Materialise every triggering set as the live-edge graph."""
        return DirectedGraph.from_edges(
            self.model.n,
            [(u, v) for v in self.model.graph.nodes for u in sorted(self.triggering_set(v))]
        )

