"""Anonymity and Bayesian axiom checks on exact influence centralities."""

import logging
from typing import Sequence

from ..diffusion.enumeration import MixtureInstance
from ..diffusion.model import TriggeringModel
from ..models.report import CentralityMode
from ..utils.errors import ValidationError
from .exact import exact_influence_centrality, node_values
from .functions import DistanceFunction

logger = logging.getLogger(__name__)

AXIOM_TOLERANCE = 1e-9


def check_anonymity(
    model: TriggeringModel,
    f: DistanceFunction,
    permutation: Sequence[int],
    mode: CentralityMode = CentralityMode.INDIVIDUAL,
    tolerance: float = AXIOM_TOLERANCE
) -> bool:
    """
    ψ_v(I) = ψ_π(v)(π(I)) for every node v.

    Args:
        model: Enumerable triggering model
        f: Distance function
        permutation: π as a list, node u renamed to permutation[u]
        mode: individual or shapley
        tolerance: Absolute tolerance
    """
    if mode is CentralityMode.GROUP:
        raise ValidationError("Anonymity is checked on per-node centralities")
    before = node_values(exact_influence_centrality(model, f, mode), model.n)
    after = node_values(exact_influence_centrality(model.relabel(permutation), f, mode), model.n)
    worst = max((abs(before[v] - after[permutation[v]]) for v in range(model.n)), default=0.0)
    logger.debug(f"Anonymity under {list(permutation)}: max deviation {worst:.3g}")
    return worst <= tolerance


def check_bayesian(
    first,
    second,
    alpha: float,
    f: DistanceFunction,
    mode: CentralityMode = CentralityMode.INDIVIDUAL,
    tolerance: float = AXIOM_TOLERANCE
) -> bool:
    """
    ψ(α I_1 + (1 − α) I_2) = α ψ(I_1) + (1 − α) ψ(I_2) node by node.

    Raises:
        ValidationError: Instances on different vertex sets, or α outside [0, 1]
    """
    if first.n != second.n:
        raise ValidationError("Bayesian check needs instances on the same vertex set")
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError("α must lie in [0, 1]")
    if mode is CentralityMode.GROUP:
        raise ValidationError("Bayesian check runs on per-node centralities")

    mixed = node_values(exact_influence_centrality(MixtureInstance.of(first, second, alpha), f, mode), first.n)
    one = node_values(exact_influence_centrality(first, f, mode), first.n)
    two = node_values(exact_influence_centrality(second, f, mode), first.n)
    worst = max(
        (abs(m - (alpha * a + (1 - alpha) * b)) for m, a, b in zip(mixed, one, two)),
        default=0.0
    )
    logger.debug(f"Bayesian check at α={alpha}: max deviation {worst:.3g}")
    return worst <= tolerance
