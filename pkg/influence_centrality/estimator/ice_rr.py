"""Two-phase RR-set estimator for additive sphere-of-influence centralities."""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..centrality.functions import NodeWiseFunction
from ..config.settings import MAX_RR_SETS_ENV
from ..diffusion.model import TriggeringModel
from ..diffusion.rng import RngStream
from ..models.report import (
    CentralityMode,
    CentralityReport,
    ComputationMethod,
    EstimationTrace,
    GroupKey,
    PhaseOneIteration,
)
from ..rr.contributions import rr_group_contribution, rr_shapley_values
from ..rr.sampler import sample_rr_set
from ..utils.errors import ResourceCapError, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_MAX_RR_SETS = 10 ** 8

PHASE_ONE = 1
PHASE_TWO = 2

Progress = Callable[[int], None]


@dataclass
class EstimatorConfig:
    """Parameters of one estimator run."""

    g: NodeWiseFunction
    eps: float = 0.2
    ell: float = 1.0
    k: int = 1
    mode: CentralityMode = CentralityMode.INDIVIDUAL
    groups: List[GroupKey] = field(default_factory=list)
    seed: int = 0
    workers: int = 1
    max_rr_sets: int = DEFAULT_MAX_RR_SETS

    @property
    def eps_prime(self) -> float:
        """ε′ = √2 · ε."""
        return math.sqrt(2) * self.eps

    def validate(self, n: int) -> List[str]:
        """Return every violated constraint for an n-node instance."""
        errors = []
        if not self.eps > 0:
            errors.append("ε must be positive")
        if not self.ell > 0:
            errors.append("ℓ must be positive")
        slots = len(self.groups) if self.mode is CentralityMode.GROUP else n
        if not 1 <= self.k <= max(slots, 1):
            errors.append(f"k must lie in 1..{slots}")
        if self.workers < 1:
            errors.append("workers must be at least 1")
        if self.max_rr_sets < 1:
            errors.append("max_rr_sets must be positive")
        if self.seed < 0:
            errors.append("seed must be non-negative")
        if self.mode is CentralityMode.GROUP:
            if not self.groups:
                errors.append("group mode needs at least one query group")
            for group in self.groups:
                if not group or min(group) < 0 or max(group) >= n:
                    errors.append(f"group {group} is empty or has ids outside 0..{n - 1}")
        if n < 1:
            errors.append("graph has no nodes")
        return errors


def theta_schedule(n: int, eps_prime: float, ell: float, i: int) -> int:
    """
    Phase-1 sample size θ_i for x = n / 2^i.

    ⌈ n ((ℓ+1) ln n + ln log2 n + ln 2)(2 + 2ε′/3) / (ε′² x) ⌉

    Raises:
        ValidationError: i outside 1..⌊log2 n⌋ - 1
    """
    last = phase_one_rounds(n)
    if not 1 <= i <= last:
        raise ValidationError(f"Iteration {i} outside 1..{last} for n={n}")
    x = n / 2 ** i
    numerator = n * ((ell + 1) * math.log(n) + math.log(math.log2(n)) + math.log(2)) * (2 + 2 * eps_prime / 3)
    return max(1, math.ceil(numerator / (eps_prime ** 2 * x)))


def final_theta(n: int, eps: float, ell: float, lower_bound: float) -> int:
    """
    Phase-2 sample size ⌈ n ((ℓ+1) ln n + ln 4)(2 + 2ε/3) / (ε² LB) ⌉.

    Raises:
        ValidationError: LB below 1
    """
    if lower_bound < 1:
        raise ValidationError(f"Lower bound must be at least 1, got {lower_bound}")
    numerator = n * ((ell + 1) * math.log(n) + math.log(4)) * (2 + 2 * eps / 3)
    return max(1, math.ceil(numerator / (eps ** 2 * lower_bound)))


def phase_one_rounds(n: int) -> int:
    """Number of doubling rounds, ⌊log2 n⌋ - 1 (at least 0)."""
    return max(0, int(math.floor(math.log2(n))) - 1) if n >= 1 else 0


def kth_largest(values: Sequence[float], k: int) -> float:
    """k-th largest value, duplicates counted."""
    arr = np.asarray(values, dtype=np.float64)
    if not 1 <= k <= arr.size:
        raise ValidationError(f"k={k} outside 1..{arr.size}")
    return float(np.sort(arr)[::-1][k - 1])


def stream_id(phase: int, iteration: int, worker: int) -> int:
    """Distinct RNG stream for every (phase, iteration, worker) batch."""
    return (phase << 48) | (iteration << 24) | worker


def _run_batch(
    model: TriggeringModel,
    mode: CentralityMode,
    g: NodeWiseFunction,
    groups: Sequence[GroupKey],
    seed: int,
    stream: int,
    count: int
) -> Tuple[np.ndarray, int]:
    """Accumulate contributions of count RR sets drawn from one stream."""
    rng = RngStream(seed, stream)
    slots = len(groups) if mode is CentralityMode.GROUP else model.n
    acc = np.zeros(slots, dtype=np.float64)
    members = 0
    for _ in range(count):
        rr = sample_rr_set(model, rng)
        members += len(rr)
        if mode is CentralityMode.INDIVIDUAL:
            for u, d in rr.dist.items():
                acc[u] += g(d)
        elif mode is CentralityMode.SHAPLEY:
            for u, phi in rr_shapley_values(rr, g).items():
                acc[u] += phi
        else:
            for j, group in enumerate(groups):
                acc[j] += rr_group_contribution(rr, g, group)
    return acc, members


class IceRREstimator:
    """
    Adaptive RR-set estimator.

    Phase 1 doubles a guess x of the k-th largest centrality until the
    running estimate clears (1 + ε′) x, which fixes a lower bound LB.
    Phase 2 draws θ(LB) fresh RR sets and returns n · est / θ.
    """

    def __init__(
        self,
        model: TriggeringModel,
        config: EstimatorConfig,
        progress: Optional[Progress] = None
    ):
        errors = config.validate(model.n)
        if errors:
            raise ValidationError("; ".join(errors))
        self.model = model
        self.config = config
        self.progress = progress
        self._generated = 0
        self._members = 0

    def _reserve(self, count: int) -> None:
        if self._generated + count > self.config.max_rr_sets:
            raise ResourceCapError(
                f"Estimation needs {self._generated + count} RR sets, "
                f"above the cap of {self.config.max_rr_sets} (set {MAX_RR_SETS_ENV} to raise it)"
            )

    def _generate(self, phase: int, iteration: int, count: int, executor) -> np.ndarray:
        """Draw count RR sets split over the configured workers."""
        cfg = self.config
        self._reserve(count)
        workers = min(cfg.workers, max(count, 1))
        shares = [count // workers + (1 if w < count % workers else 0) for w in range(workers)]
        args = [
            (self.model, cfg.mode, cfg.g, cfg.groups, cfg.seed, stream_id(phase, iteration, w), share)
            for w, share in enumerate(shares) if share
        ]
        if not args:
            results = []
        elif executor is None:
            results = [_run_batch(*a) for a in args]
        else:
            results = list(executor.map(_run_batch, *zip(*args)))

        slots = len(cfg.groups) if cfg.mode is CentralityMode.GROUP else self.model.n
        total = np.zeros(slots, dtype=np.float64)
        for acc, members in results:
            total += acc
            self._members += members
        self._generated += count
        if self.progress:
            self.progress(count)
        return total

    def estimate(self) -> Tuple[CentralityReport, EstimationTrace]:
        """
        Run both phases.

        Returns:
            (report with ψ̂, trace of the run)

        Raises:
            ResourceCapError: RR-set budget exceeded
        """
        cfg = self.config
        n = self.model.n
        trace = EstimationTrace()
        executor = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
        try:
            started = time.perf_counter()
            lower_bound = self._phase_one(trace, executor)
            trace.phase1_seconds = time.perf_counter() - started

            theta = final_theta(n, cfg.eps, cfg.ell, lower_bound)
            trace.lower_bound = lower_bound
            trace.theta = theta
            logger.info(f"Phase 2: LB={lower_bound:.6g}, θ={theta}")

            started = time.perf_counter()
            est = self._generate(PHASE_TWO, 0, theta, executor)
            trace.phase2_seconds = time.perf_counter() - started
            trace.rr_sets_phase2 = theta
        finally:
            if executor is not None:
                executor.shutdown()

        trace.mean_rr_size = self._members / self._generated if self._generated else 0.0
        estimates = n * est / theta
        if kth_largest(estimates, cfg.k) < 1.0:
            trace.warnings.append(
                "estimated k-th largest centrality is below 1; the relative-error guarantee assumes it is at least 1"
            )

        if cfg.mode is CentralityMode.GROUP:
            values: Dict = {group: float(v) for group, v in zip(cfg.groups, estimates)}
        else:
            values = {v: float(x) for v, x in enumerate(estimates)}

        report = CentralityReport(
            mode=cfg.mode,
            function=cfg.g.name,
            values=values,
            method=ComputationMethod.ESTIMATED,
            parameters={
                'eps': cfg.eps,
                'ell': cfg.ell,
                'k': cfg.k,
                'seed': cfg.seed,
                'workers': cfg.workers,
                'theta': theta,
                'lower_bound': trace.lower_bound,
            },
            labels=self.model.graph.labels
        )
        return report, trace

    def _phase_one(self, trace: EstimationTrace, executor) -> float:
        cfg = self.config
        n = self.model.n
        eps_prime = cfg.eps_prime
        slots = len(cfg.groups) if cfg.mode is CentralityMode.GROUP else n
        est = np.zeros(slots, dtype=np.float64)
        previous = 0

        for i in range(1, phase_one_rounds(n) + 1):
            x = n / 2 ** i
            theta_i = theta_schedule(n, eps_prime, cfg.ell, i)
            est += self._generate(PHASE_ONE, i, theta_i - previous, executor)
            trace.rr_sets_phase1 += theta_i - previous
            previous = theta_i

            est_k = kth_largest(est, cfg.k)
            stopped = n * est_k / theta_i >= (1 + eps_prime) * x
            trace.iterations.append(PhaseOneIteration(i=i, x=x, theta_i=theta_i, est_k=est_k, stopped=stopped))
            logger.info(f"Phase 1, i={i}: x={x:.6g}, θ_i={theta_i}, est^(k)={est_k:.6g}")
            if stopped:
                return n * est_k / (theta_i * (1 + eps_prime))

        trace.warnings.append("phase 1 ended without meeting the stopping rule; LB = 1")
        return 1.0


def estimate(
    model: TriggeringModel,
    config: EstimatorConfig,
    progress: Optional[Progress] = None
) -> Tuple[CentralityReport, EstimationTrace]:
    """Run the estimator; see IceRREstimator."""
    return IceRREstimator(model, config, progress).estimate()


def satisfies_error_bounds(
    estimates: Mapping,
    exact: Mapping,
    eps: float,
    k: int
) -> bool:
    """
    Both relative-error clauses for every key.

    |ψ̂ − ψ| ≤ ε ψ when ψ exceeds the exact k-th largest value ψ^(k), and
    |ψ̂ − ψ| ≤ ε ψ^(k) otherwise.
    """
    threshold = kth_largest(list(exact.values()), k)
    for key, true_value in exact.items():
        error = abs(estimates[key] - true_value)
        bound = eps * true_value if true_value > threshold else eps * threshold
        if error > bound + 1e-12:
            return False
    return True
