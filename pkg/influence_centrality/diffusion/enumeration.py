"""Exact enumeration of live-edge outcomes and influence spread."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, List, Sequence, Tuple, Union

from ..models.graph import DirectedGraph
from ..utils.errors import SizeGuardError, ValidationError
from .model import TriggeringModel

logger = logging.getLogger(__name__)

DEFAULT_MAX_OUTCOMES = 2 ** 16

Probability = Union[float, Fraction]
Outcome = Tuple[Probability, DirectedGraph]


def enumerate_outcomes(
    model: TriggeringModel,
    max_outcomes: int = DEFAULT_MAX_OUTCOMES,
    exact: bool = False
) -> List[Outcome]:
    """
    Every live-edge graph the model can produce, with its probability.

    Args:
        model: Triggering model
        max_outcomes: Largest joint support accepted
        exact: Fraction probabilities instead of floats

    Returns:
        (probability, live-edge graph) pairs; probabilities sum to 1

    Raises:
        SizeGuardError: Joint support larger than max_outcomes
    """
    size = model.joint_support_size()
    if size > max_outcomes:
        raise SizeGuardError(
            f"Model randomness has {size} joint outcomes; the exact oracle allows {max_outcomes}"
        )

    per_node = [model.triggering_distribution(v, exact=exact) for v in model.graph.nodes]
    one = Fraction(1) if exact else 1.0
    outcomes: List[Outcome] = []
    for choice in product(*per_node):
        prob = one
        edges = []
        for v, (members, p) in enumerate(choice):
            prob *= p
            edges.extend((u, v) for u in sorted(members))
        outcomes.append((prob, DirectedGraph.from_edges(model.n, edges)))

    logger.debug(f"Enumerated {len(outcomes)} live-edge outcomes for {model.describe()}")
    return outcomes


def _reachable_count(g: DirectedGraph, sources: Iterable[int]) -> int:
    stack = list(set(sources))
    visited = set(stack)
    while stack:
        u = stack.pop()
        for w in g.out_adj[u]:
            if w not in visited:
                visited.add(w)
                stack.append(w)
    return len(visited)


def influence_spread(
    model,
    seed_set: Iterable[int],
    max_outcomes: int = DEFAULT_MAX_OUTCOMES,
    exact: bool = False
) -> Probability:
    """
    Exact σ(S): expected number of nodes reachable from S in the live-edge graph.

    model may be a TriggeringModel or a MixtureInstance.
    """
    seeds = frozenset(seed_set)
    if not seeds:
        raise ValidationError("Seed set must not be empty")
    total = Fraction(0) if exact else 0.0
    for prob, live in model.outcomes(max_outcomes=max_outcomes, exact=exact):
        total += prob * _reachable_count(live, seeds)
    return total


@dataclass(frozen=True)
class MixtureInstance:
    """
    Bayesian mixture of instances on one vertex set.

    With probability weights[i] the diffusion follows components[i]. Its
    outcomes are the weighted union of the component outcomes.
    """

    components: Tuple[TriggeringModel, ...]
    weights: Tuple[Probability, ...]

    def __post_init__(self):
        if not self.components or len(self.components) != len(self.weights):
            raise ValidationError("A mixture needs one weight per component")
        if len({c.n for c in self.components}) != 1:
            raise ValidationError("Mixture components live on different vertex sets")
        if any(w < 0 for w in self.weights) or abs(sum(self.weights) - 1) > 1e-9:
            raise ValidationError("Mixture weights must be non-negative and sum to 1")

    @classmethod
    def of(cls, first: TriggeringModel, second: TriggeringModel, alpha: Probability) -> "MixtureInstance":
        """alpha * first + (1 - alpha) * second."""
        return cls(components=(first, second), weights=(alpha, 1 - alpha))

    @property
    def n(self) -> int:
        return self.components[0].n

    def describe(self) -> str:
        parts = ", ".join(f"{w}*{c.describe()}" for c, w in zip(self.components, self.weights))
        return f"mixture({parts})"

    def outcomes(self, max_outcomes: int = DEFAULT_MAX_OUTCOMES, exact: bool = False) -> List[Outcome]:
        mixed: List[Outcome] = []
        for component, weight in zip(self.components, self.weights):
            w = Fraction(weight) if exact else float(weight)
            mixed.extend(
                (w * prob, live)
                for prob, live in component.outcomes(max_outcomes=max_outcomes, exact=exact)
                if w != 0
            )
        if len(mixed) > max_outcomes:
            raise SizeGuardError(f"Mixture has {len(mixed)} outcomes; the exact oracle allows {max_outcomes}")
        return mixed


def total_probability(outcomes: Sequence[Outcome]) -> Probability:
    return sum(prob for prob, _ in outcomes)
