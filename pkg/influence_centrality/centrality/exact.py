"""Exact graph-theoretic and influence-based centralities."""

import logging
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..diffusion.enumeration import DEFAULT_MAX_OUTCOMES
from ..graph.traversal import bfs_distances, reverse_bfs_distances
from ..models.graph import INF, DirectedGraph, DistanceVector, distance_min
from ..models.report import CentralityMode, CentralityReport, ComputationMethod, GroupKey
from ..utils.errors import SizeGuardError, ValidationError
from .functions import DistanceFunction
from .shapley import level_shapley, monte_carlo_shapley, shapley_from_group_values

logger = logging.getLogger(__name__)

GRAPH_SHAPLEY_EXACT_MAX_N = 9
SHAPLEY_EXACT_MAX_N = 8
DEFAULT_PERMUTATION_SAMPLES = 10000


def _normalize_groups(groups: Optional[Iterable[Iterable[int]]], n: int) -> List[GroupKey]:
    if groups is None:
        raise ValidationError("Group mode needs query groups")
    keys = []
    for group in groups:
        key = tuple(sorted(set(group)))
        if not key:
            raise ValidationError("Query groups must be non-empty")
        if key[0] < 0 or key[-1] >= n:
            raise ValidationError(f"Group {key} has ids outside 0..{n - 1}")
        keys.append(key)
    return keys


def subset_distances(g: DirectedGraph) -> List[DistanceVector]:
    """
    Distance vector d_G(S) for every subset mask S.

    d(S ∪ {u}) is the pointwise minimum of d(S) and d({u}); mask 0 maps
    to the all-INF vector.
    """
    singles = [bfs_distances(g, [u]) for u in g.nodes]
    table: List[DistanceVector] = [tuple([INF] * g.n)]
    for mask in range(1, 1 << g.n):
        low = (mask & -mask).bit_length() - 1
        rest = table[mask & (mask - 1)]
        table.append(tuple(distance_min(a, b) for a, b in zip(rest, singles[low])))
    return table


def _subset_values(g: DirectedGraph, f: DistanceFunction) -> List[float]:
    table = subset_distances(g)
    return [0.0] + [f(d) for d in table[1:]]


def _additive_graph_shapley(g: DirectedGraph, f: DistanceFunction) -> List[float]:
    """Sum over targets v of the level closed form on the nodes that reach v."""
    phi = [0.0] * g.n
    for v in g.nodes:
        to_v = reverse_bfs_distances(g, v)
        levels = {u: d for u, d in enumerate(to_v) if d is not INF}
        for u, value in level_shapley(levels, f.g).items():
            phi[u] += value
    return phi


def _report(
    mode: CentralityMode,
    f: DistanceFunction,
    values: Dict,
    method: ComputationMethod = ComputationMethod.EXACT,
    parameters: Optional[Dict] = None,
    standard_errors: Optional[Dict] = None,
    labels=None
) -> CentralityReport:
    return CentralityReport(
        mode=mode,
        function=f.name,
        values=values,
        method=method,
        parameters=parameters or {},
        standard_errors=standard_errors,
        labels=labels
    )


def graph_centrality(
    g: DirectedGraph,
    f: DistanceFunction,
    mode: CentralityMode = CentralityMode.INDIVIDUAL,
    groups: Optional[Iterable[Iterable[int]]] = None,
    permutation_samples: int = DEFAULT_PERMUTATION_SAMPLES,
    seed: int = 0,
    exact_max_n: int = GRAPH_SHAPLEY_EXACT_MAX_N
) -> CentralityReport:
    """
    Distance-based centrality μ of a fixed graph.

    Shapley mode is exact over all subsets up to exact_max_n nodes. Above
    that, additive functions use the per-target level closed form and
    closeness falls back to Monte Carlo permutations with standard errors.

    Args:
        g: Graph
        f: Distance function
        mode: individual, group or shapley
        groups: Query groups for group mode
        permutation_samples: Permutations for the Monte Carlo fallback
        seed: Seed for the Monte Carlo fallback
        exact_max_n: Largest n for subset enumeration

    Returns:
        CentralityReport
    """
    if mode is CentralityMode.INDIVIDUAL:
        values = {v: f(bfs_distances(g, [v])) for v in g.nodes}
        return _report(mode, f, values, labels=g.labels)

    if mode is CentralityMode.GROUP:
        values = {key: f(bfs_distances(g, key)) for key in _normalize_groups(groups, g.n)}
        return _report(mode, f, values, labels=g.labels)

    if g.n <= exact_max_n:
        phi = shapley_from_group_values(g.n, _subset_values(g, f))
        return _report(mode, f, dict(enumerate(phi)), labels=g.labels)

    if f.is_additive:
        phi = _additive_graph_shapley(g, f)
        return _report(mode, f, dict(enumerate(phi)), labels=g.labels,
                       parameters={'closed_form': True})

    logger.info(f"n={g.n} above {exact_max_n}: Monte Carlo Shapley with {permutation_samples} permutations")
    means, stderr = monte_carlo_shapley(
        g.n,
        lambda group: f(bfs_distances(g, group)),
        permutation_samples,
        np.random.default_rng(seed)
    )
    return _report(
        mode, f, dict(enumerate(means)),
        method=ComputationMethod.ESTIMATED,
        parameters={'permutation_samples': permutation_samples, 'seed': seed},
        standard_errors=dict(enumerate(stderr)),
        labels=g.labels
    )


def exact_group_values(
    model,
    f: DistanceFunction,
    max_outcomes: int = DEFAULT_MAX_OUTCOMES,
    exact: bool = False
) -> List:
    """ψ^grp[f]_S for every subset mask S (0 for the empty group)."""
    outcomes = model.outcomes(max_outcomes=max_outcomes, exact=exact)
    totals = None
    for prob, live in outcomes:
        values = _subset_values(live, f)
        if totals is None:
            totals = [prob * x for x in values]
        else:
            totals = [t + prob * x for t, x in zip(totals, values)]
    totals[0] = 0.0
    return totals


def exact_influence_centrality(
    model,
    f: DistanceFunction,
    mode: CentralityMode = CentralityMode.INDIVIDUAL,
    groups: Optional[Iterable[Iterable[int]]] = None,
    max_outcomes: int = DEFAULT_MAX_OUTCOMES,
    exact_max_n: int = SHAPLEY_EXACT_MAX_N,
    coalition_limit: Optional[int] = None,
    exact: bool = False,
    permutation_samples: int = DEFAULT_PERMUTATION_SAMPLES,
    seed: int = 0
) -> CentralityReport:
    """
    Influence-based centrality ψ by enumerating the model's live-edge outcomes.

    ψ_v is E[f(d(v))] over the cascade seeded by {v}; group values are seeded
    by S; Shapley values are those of the game S -> ψ^grp_S. Above
    exact_max_n the Shapley values are Monte Carlo estimates over random
    permutations, with standard errors.

    Args:
        model: TriggeringModel or MixtureInstance
        f: Distance function
        mode: individual, group or shapley
        groups: Query groups for group mode
        max_outcomes: Enumeration limit
        exact_max_n: Largest n for exact Shapley values
        coalition_limit: Truncation for the Shapley value (exact sizes only)
        exact: Fraction probabilities
        permutation_samples: Permutations for the Monte Carlo fallback
        seed: Seed for the Monte Carlo fallback

    Raises:
        SizeGuardError: Too many outcomes, or n too large for truncated Shapley
    """
    n = model.n
    labels = getattr(getattr(model, 'graph', None), 'labels', None)

    if mode is CentralityMode.SHAPLEY:
        if n <= exact_max_n:
            phi = shapley_from_group_values(
                n, exact_group_values(model, f, max_outcomes, exact), coalition_limit
            )
            parameters = {'coalition_limit': coalition_limit} if coalition_limit else {}
            return _report(mode, f, dict(enumerate(phi)), parameters=parameters, labels=labels)
        if coalition_limit:
            raise SizeGuardError(f"Truncated Shapley centrality is limited to n <= {exact_max_n}")

        outcomes = [(float(prob), live) for prob, live in model.outcomes(max_outcomes=max_outcomes)]
        logger.info(f"n={n} above {exact_max_n}: Monte Carlo Shapley with {permutation_samples} permutations")
        means, stderr = monte_carlo_shapley(
            n,
            lambda group: sum(prob * f(bfs_distances(live, group)) for prob, live in outcomes),
            permutation_samples,
            np.random.default_rng(seed)
        )
        return _report(
            mode, f, dict(enumerate(means)),
            method=ComputationMethod.ESTIMATED,
            parameters={'permutation_samples': permutation_samples, 'seed': seed},
            standard_errors=dict(enumerate(stderr)),
            labels=labels
        )

    if mode is CentralityMode.GROUP:
        keys = _normalize_groups(groups, n)
    else:
        keys = [(v,) for v in range(n)]

    outcomes = model.outcomes(max_outcomes=max_outcomes, exact=exact)
    values: Dict = {}
    for key in keys:
        total = 0.0
        for prob, live in outcomes:
            total += prob * f(bfs_distances(live, key))
        values[key if mode is CentralityMode.GROUP else key[0]] = total
    return _report(mode, f, values, labels=labels)


def node_values(report: CentralityReport, n: int) -> List[float]:
    """Per-node values of an individual / Shapley report as a list."""
    return [report.values[v] for v in range(n)]


def is_efficient(report: CentralityReport, grand_value: float, tolerance: float = 1e-9) -> Tuple[bool, float]:
    """Shapley efficiency: Σ φ_v equals the value of the grand coalition."""
    gap = abs(float(report.total) - float(grand_value))
    return gap <= tolerance, gap
