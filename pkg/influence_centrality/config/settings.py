"""Configuration management module."""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List

import yaml

from ..utils.errors import ValidationError

MAX_RR_SETS_ENV = "CC_MAX_RR_SETS"


def _resolve_env(value: Any) -> Any:
    """Replace `$NAME` strings with the environment value when set."""
    if isinstance(value, str) and value.startswith('$'):
        return os.getenv(value[1:], value)
    return value


_TRUE = {'true', 'yes', 'on', '1'}
_FALSE = {'false', 'no', 'off', '0'}


def _parse_bool(value: Any) -> bool:
    """YAML booleans, 0/1, or true/false style strings (e.g. from `$ENV`)."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int) and value in (0, 1):
        return bool(value)
    if isinstance(value, str) and value.strip().lower() in _TRUE | _FALSE:
        return value.strip().lower() in _TRUE
    raise ValueError(f"expected a boolean, got {value!r}")


@dataclass
class EstimatorSettings:
    """RR-set estimator defaults."""

    eps: float = 0.2
    ell: float = 1.0
    k: int = 1
    workers: int = 1
    seed: int = 0
    max_rr_sets: int = 10 ** 8


@dataclass
class ExactSettings:
    """Limits of the enumeration oracles."""

    max_outcomes: int = 2 ** 16
    shapley_exact_max_n: int = 8
    graph_shapley_exact_max_n: int = 9
    permutation_samples: int = 10000
    basis_max_n: int = 4


@dataclass
class OutputSettings:
    """Report output settings."""

    format: str = "csv"
    include_timings: bool = False


@dataclass
class Config:
    """Main configuration class."""

    estimator: EstimatorSettings = field(default_factory=EstimatorSettings)
    exact: ExactSettings = field(default_factory=ExactSettings)
    output: OutputSettings = field(default_factory=OutputSettings)

    @classmethod
    def default(cls) -> "Config":
        """Defaults plus environment overrides."""
        return cls.from_dict({})

    @classmethod
    def from_yaml(cls, file_path: str) -> "Config":
        """Load configuration from YAML file."""
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {file_path}")

        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}

        if not isinstance(data, dict):
            raise ValidationError(f"Config file {file_path} must hold a mapping")
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict) -> "Config":
        """Create config from dictionary."""
        estimator_data = {k: _resolve_env(v) for k, v in (data.get('estimator') or {}).items()}
        exact_data = {k: _resolve_env(v) for k, v in (data.get('exact') or {}).items()}
        output_data = {k: _resolve_env(v) for k, v in (data.get('output') or {}).items()}

        try:
            estimator = EstimatorSettings(
                eps=float(estimator_data.get('eps', 0.2)),
                ell=float(estimator_data.get('ell', 1.0)),
                k=int(estimator_data.get('k', 1)),
                workers=int(estimator_data.get('workers', 1)),
                seed=int(estimator_data.get('seed', 0)),
                max_rr_sets=int(estimator_data.get('max_rr_sets', 10 ** 8))
            )

            exact = ExactSettings(
                max_outcomes=int(exact_data.get('max_outcomes', 2 ** 16)),
                shapley_exact_max_n=int(exact_data.get('shapley_exact_max_n', 8)),
                graph_shapley_exact_max_n=int(exact_data.get('graph_shapley_exact_max_n', 9)),
                permutation_samples=int(exact_data.get('permutation_samples', 10000)),
                basis_max_n=int(exact_data.get('basis_max_n', 4))
            )

            output = OutputSettings(
                format=str(output_data.get('format', 'csv')),
                include_timings=_parse_bool(output_data.get('include_timings', False))
            )
        except (TypeError, ValueError) as e:
            raise ValidationError(f"Invalid configuration value: {e}")

        # Environment always wins for the RR-set budget
        cap = os.getenv(MAX_RR_SETS_ENV)
        if cap is not None:
            try:
                estimator.max_rr_sets = int(cap)
            except ValueError:
                raise ValidationError(f"{MAX_RR_SETS_ENV} must be an integer, got '{cap}'")

        return cls(estimator=estimator, exact=exact, output=output)

    def validate(self) -> List[str]:
        """Validate configuration and return list of errors."""
        errors = []

        if self.estimator.eps <= 0:
            errors.append("estimator.eps must be positive")
        if self.estimator.ell <= 0:
            errors.append("estimator.ell must be positive")
        if self.estimator.k < 1:
            errors.append("estimator.k must be at least 1")
        if self.estimator.workers < 1:
            errors.append("estimator.workers must be at least 1")
        if self.estimator.seed < 0:
            errors.append("estimator.seed must be non-negative")
        if self.estimator.max_rr_sets < 1:
            errors.append("estimator.max_rr_sets must be at least 1")

        if self.exact.max_outcomes < 1:
            errors.append("exact.max_outcomes must be at least 1")
        if self.exact.permutation_samples < 2:
            errors.append("exact.permutation_samples must be at least 2")
        if self.exact.basis_max_n not in (4, 5):
            errors.append("exact.basis_max_n must be 4 or 5")

        if self.output.format not in ('csv', 'json'):
            errors.append(f"output.format must be csv or json, got '{self.output.format}'")

        return errors
