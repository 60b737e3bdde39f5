"""Layered-graph basis: rank check, decomposition and reconstruction."""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Mapping, Sequence, Tuple

from ..models.graph import INF, LayeredGraphSpec
from ..models.profile import BasisDecomposition, ProfileVector, Scalar, SequenceIndex
from ..utils.errors import SizeGuardError, ValidationError
from .linalg import rational_rank, solve_float, solve_rational
from .sequences import enumerate_layered_instances, enumerate_sequences, layered_instance_vector

logger = logging.getLogger(__name__)

DEFAULT_BASIS_MAX_N = 4
OPT_IN_BASIS_MAX_N = 5
RESIDUAL_TOLERANCE = 1e-8


@dataclass(frozen=True)
class LayeredBasis:
    """Basis specs with their profile vectors; columns[j] is vector(specs[j])."""

    index: SequenceIndex
    specs: Tuple[LayeredGraphSpec, ...]
    columns: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.index.n

    def rows(self) -> List[List[int]]:
        """Matrix with one column per spec."""
        return [list(row) for row in zip(*self.columns)] if self.columns else []

    def column(self, spec: LayeredGraphSpec) -> Tuple[int, ...]:
        return self.columns[self.specs.index(spec)]


@dataclass(frozen=True)
class BasisCheck:
    """Result of the independence check for one n."""

    n: int
    dimension: int
    spec_count: int
    rank: int
    seconds: float = 0.0

    @property
    def full_rank(self) -> bool:
        return self.dimension == self.spec_count == self.rank

    def __bool__(self) -> bool:
        return self.full_rank

    def summary(self) -> str:
        return (
            f"M={self.dimension}, |L|={self.spec_count}, rank={self.rank}, "
            f"full-rank={'true' if self.full_rank else 'false'}"
        )


def _guard(n: int, allow_large: bool) -> None:
    limit = OPT_IN_BASIS_MAX_N if allow_large else DEFAULT_BASIS_MAX_N
    if n > limit:
        hint = "" if allow_large else f" (n={OPT_IN_BASIS_MAX_N} needs the opt-in flag)"
        raise SizeGuardError(f"n={n} exceeds the basis limit of {limit}{hint}")


@lru_cache(maxsize=None)
def _layered_basis(n: int) -> LayeredBasis:
    index = enumerate_sequences(n)
    specs = tuple(enumerate_layered_instances(n))
    columns = tuple(tuple(layered_instance_vector(spec, index).values) for spec in specs)
    return LayeredBasis(index=index, specs=specs, columns=columns)


def layered_basis(n: int, allow_large: bool = False) -> LayeredBasis:
    """Enumerated basis for n nodes (cached)."""
    _guard(n, allow_large)
    return _layered_basis(n)


def basis_rank_check(n: int, allow_large: bool = False) -> BasisCheck:
    """
    Exact rank of the matrix of layered-instance vectors.

    Args:
        n: Vertex count (at most 4, or 5 with allow_large)
        allow_large: Permit n = 5

    Returns:
        BasisCheck; truthy iff M = |L| = rank

    Raises:
        SizeGuardError: n too large
    """
    started = time.perf_counter()
    basis = layered_basis(n, allow_large)
    rank = rational_rank(basis.rows())
    check = BasisCheck(
        n=n,
        dimension=basis.index.dimension,
        spec_count=len(basis.specs),
        rank=rank,
        seconds=time.perf_counter() - started
    )
    logger.info(f"Basis check n={n}: {check.summary()}")
    return check


def decompose(profile: ProfileVector, allow_large: bool = False) -> BasisDecomposition:
    """
    Coefficients λ with Σ λ_B · vector(B) = profile.

    Rational profiles are solved exactly; others with numpy at a 1e-9
    pivot tolerance.

    Raises:
        SingularBasisError: basis matrix not invertible
        ValidationError: residual above 1e-8
    """
    basis = layered_basis(profile.n, allow_large)
    if basis.index.dimension != len(profile.values):
        raise ValidationError("Profile does not match the sequence index")
    rows = basis.rows()

    if profile.is_exact:
        solution: Sequence[Scalar] = solve_rational(rows, profile.values)
        residual = 0.0
        exact = True
    else:
        x, residual = solve_float(rows, profile.values)
        solution = [float(v) for v in x]
        exact = False
        if residual > RESIDUAL_TOLERANCE:
            raise ValidationError(f"Decomposition residual {residual:.3g} exceeds {RESIDUAL_TOLERANCE}")

    return BasisDecomposition(
        n=profile.n,
        coefficients=dict(zip(basis.specs, solution)),
        residual=residual,
        exact=exact
    )


def reconstruct_centrality(
    decomposition: BasisDecomposition,
    psi_on_basis: Mapping[LayeredGraphSpec, Sequence[float]],
    psi_null: Sequence[float]
) -> List[Scalar]:
    """
    Σ λ_B ψ(B) + (1 − Σ λ_B) ψ(null), node by node.

    Args:
        decomposition: Basis coefficients of an instance
        psi_on_basis: Centrality vector of every basis instance with λ ≠ 0
        psi_null: Centrality vector of the null instance
    """
    weight_null = 1 - decomposition.coefficient_sum
    values: List[Scalar] = [weight_null * v for v in psi_null]
    for spec, coefficient in decomposition.coefficients.items():
        if coefficient == 0:
            continue
        for u, v in enumerate(psi_on_basis[spec]):
            values[u] += coefficient * v
    return values


def spec_sequence(spec: LayeredGraphSpec, seed: frozenset) -> tuple:
    """Activation times of the BFS cascade on spec's layered graph from seed ⊆ R_0."""
    if not seed or not seed <= spec.layers[0]:
        raise ValidationError("Seed must be a non-empty subset of the first layer")
    times = [INF] * spec.n
    for u in seed:
        times[u] = 0
    for level, layer in enumerate(spec.layers[1:], start=1):
        for u in layer:
            times[u] = level
    return tuple(times)


def alternating_seed_sum(basis: LayeredBasis, target: LayeredGraphSpec, spec: LayeredGraphSpec) -> Fraction:
    """
    Σ over non-empty S_0 ⊆ R_0(target) of (−1)^(1+|S_0|) · vector(spec)[Seq_target(S_0)].

    For specs with the same layers R_1..R_t as target it equals 1 when
    R_0(spec) contains R_0(target) (in particular for spec = target) and 0
    otherwise.
    """
    first = sorted(target.layers[0])
    column = basis.column(spec)
    total = Fraction(0)
    for mask in range(1, 1 << len(first)):
        seed = frozenset(u for j, u in enumerate(first) if mask >> j & 1)
        pos = basis.index.position(spec_sequence(target, seed))
        sign = 1 if len(seed) % 2 == 1 else -1
        total += sign * column[pos]
    return total
