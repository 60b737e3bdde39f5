"""Main CLI module - orchestrates ingestion, computation and reporting."""

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional, Tuple

import click
import numpy as np
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn

from ..centrality.exact import exact_influence_centrality, graph_centrality
from ..centrality.functions import DistanceFunction, parse_function
from ..config.settings import Config
from ..diffusion.cascade import simulate_cascade
from ..diffusion.model import TriggeringModel
from ..diffusion.rng import RngStream
from ..estimator.ice_rr import EstimatorConfig, IceRREstimator
from ..graph.parser import (
    EdgeFormat,
    detect_edge_format,
    parse_edge_list,
    parse_explicit_model,
    parse_groups,
    parse_node_set,
)
from ..graph.traversal import bfs_distances, reverse_bfs_distances
from ..models.graph import INF, DirectedGraph
from ..models.report import CentralityMode, CentralityReport, EstimationTrace, GroupKey
from ..profiles.basis import basis_rank_check, decompose, layered_basis
from ..profiles.sequences import exact_profile
from ..reporters.console_reporter import ConsoleReporter
from ..reporters.csv_reporter import CSVReporter
from ..reporters.json_reporter import JSONReporter
from ..rr.sampler import sample_rr_set
from ..utils.errors import CentralityError, ValidationError
from ..utils.logging import setup_logging

console = Console(stderr=True)
logger = logging.getLogger(__name__)

DEFAULT_CONFIG = 'config.yaml'


@contextmanager
def _handle_errors():
    """Map package errors to exit codes: 2 validation, 3 resource cap, 1 otherwise."""
    try:
        yield
    except CentralityError as e:
        console.print(f"[red]Error: {e}[/]")
        logger.debug("Command failed", exc_info=True)
        sys.exit(e.exit_code)
    except (OSError, UnicodeDecodeError) as e:
        console.print(f"[red]Error: {e}[/]")
        logger.debug("Command failed", exc_info=True)
        sys.exit(2)
    except Exception as e:
        console.print(f"[red]Unexpected error: {e}[/]")
        logger.exception("Command failed")
        sys.exit(1)


def _pick(value, default):
    return default if value is None else value


# Shared options

def model_options(func):
    """--input/--model and the model parameter flags."""
    options = [
        click.option('--input', '-i', 'input_path', required=True,
                     type=click.Path(exists=True, dir_okay=False), help='Edge-list file'),
        click.option('--model', '-m', 'model_kind', type=click.Choice(['ic', 'lt', 'explicit']),
                     default='ic', show_default=True, help='Diffusion model'),
        click.option('--edge-format', type=click.Choice(['auto'] + [f.value for f in EdgeFormat]),
                     default='auto', show_default=True, help='Edge-list flavour'),
        click.option('--remap', is_flag=True, help='Treat node ids as labels and remap them densely'),
        click.option('--prob', type=float, default=0.1, show_default=True,
                     help='IC probability for edges without a weight'),
        click.option('--explicit', 'explicit_path', type=click.Path(exists=True, dir_okay=False),
                     help='Triggering distributions file (--model explicit)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def function_options(func):
    """--fn/--delta/--mode/--groups."""
    options = [
        click.option('--fn', 'fn_name', default='rch', show_default=True,
                     help='Centrality function: deg, har, rch, soi, cls'),
        click.option('--delta', type=int, help='Radius δ for soi'),
        click.option('--mode', type=click.Choice([m.value for m in CentralityMode]),
                     default='individual', show_default=True, help='Centrality form'),
        click.option('--groups', 'groups_path', type=click.Path(exists=True, dir_okay=False),
                     help='Groups file, one comma-separated group per line (--mode group)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def output_options(func):
    """--output/--format."""
    options = [
        click.option('--output', '-o', help='Output file path (standard output when omitted)'),
        click.option('--format', '-f', 'fmt', type=click.Choice(['csv', 'json']),
                     help='Output format (default from config, csv)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


# Loading helpers

def _read_graph(input_path: str, edge_format: str, remap: bool, weighted_format: EdgeFormat):
    text = Path(input_path).read_bytes()
    if edge_format == 'auto':
        fmt = detect_edge_format(text, weighted_format)
    else:
        fmt = EdgeFormat(edge_format)
    return parse_edge_list(text, fmt, remap=remap)


def load_model(
    input_path: str,
    model_kind: str,
    edge_format: str = 'auto',
    remap: bool = False,
    prob: float = 0.1,
    explicit_path: Optional[str] = None
) -> TriggeringModel:
    """
    Build a triggering model from files.

    IC and LT read their weights from the edge list; the explicit model
    reads the graph from the edge list and distributions from explicit_path.

    Raises:
        ValidationError: Inconsistent flags or malformed input
    """
    weighted = EdgeFormat.LT_WEIGHTED if model_kind == 'lt' else EdgeFormat.IC_WEIGHTED
    edges = _read_graph(input_path, edge_format, remap, weighted)

    if model_kind == 'explicit':
        if not explicit_path:
            raise ValidationError("--model explicit needs --explicit FILE")
        distributions = parse_explicit_model(Path(explicit_path).read_bytes(), edges.graph)
        model = TriggeringModel.explicit(edges.graph, distributions)
    elif explicit_path:
        raise ValidationError("--explicit is only valid with --model explicit")
    elif model_kind == 'lt':
        model = TriggeringModel.linear_threshold(edges.graph, edges.weights)
    else:
        if not 0.0 <= prob <= 1.0:
            raise ValidationError(f"--prob must lie in [0,1], got {prob}")
        model = TriggeringModel.independent_cascade(edges.graph, edges.weights, default=prob)

    logger.info(f"Loaded {model.describe()}")
    return model


def _load_groups(mode: CentralityMode, groups_path: Optional[str], graph: DirectedGraph) -> List[GroupKey]:
    if mode is CentralityMode.GROUP:
        if not groups_path:
            raise ValidationError("--mode group needs --groups FILE")
        return parse_groups(Path(groups_path).read_bytes(), graph)
    if groups_path:
        raise ValidationError("--groups is only valid with --mode group")
    return []


def _write_text(text: str, output: Optional[str], what: str) -> None:
    """Send data to the output file, or to standard output."""
    if output:
        output_file = Path(output)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        output_file.write_text(text, encoding='utf-8')
        console.print(f"[green]✓ {what} saved to: {output_file}[/]")
    else:
        click.echo(text, nl=False)


def _emit_report(
    report: CentralityReport,
    output: Optional[str],
    fmt: str,
    trace: Optional[EstimationTrace] = None,
    include_timings: bool = False
) -> None:
    if fmt == 'json':
        text = JSONReporter().render(report, trace, include_timings)
    else:
        text = CSVReporter().render_report(report)
    _write_text(text, output, "Report")


# Commands

@click.group()
@click.option('--config', '-c', 'config_path', default=None, help=f'Path to config file (default {DEFAULT_CONFIG})')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.pass_context
def main(ctx, config_path, verbose):
    """
    Influence Centrality - influence-based network centralities.

    Computes degree, harmonic, reachability, sphere-of-influence and
    closeness centralities of stochastic diffusion models, exactly on
    small instances and by RR-set estimation at scale.
    """
    setup_logging(verbose)
    ctx.ensure_object(dict)

    path = config_path or DEFAULT_CONFIG
    with _handle_errors():
        if Path(path).exists():
            cfg = Config.from_yaml(path)
            logger.debug(f"Configuration loaded from {path}")
        else:
            if config_path:
                console.print(f"[yellow]Config file not found: {config_path}, using defaults[/]")
                console.print("[yellow]Use 'config.example.yaml' as template[/]")
            cfg = Config.default()

        errors = cfg.validate()
        if errors:
            raise ValidationError("Configuration errors: " + "; ".join(errors))

    ctx.obj['config'] = cfg


@main.command()
@model_options
@function_options
@click.option('--eps', type=float, help='Relative error ε')
@click.option('--ell', type=float, help='Confidence exponent ℓ (failure probability 1/n^ℓ)')
@click.option('--k', 'k', type=int, help='Rank k of the guaranteed values')
@click.option('--seed', type=int, help='Random seed')
@click.option('--workers', '-w', type=int, help='Worker processes')
@output_options
@click.option('--trace', 'trace_path', help='Write the estimator trace as JSON to this file')
@click.option('--trace-timings', is_flag=True, help='Include wall-clock timings in traces')
@click.option('--summary', is_flag=True, help='Print a summary table on standard error')
@click.pass_context
def estimate(ctx, input_path, model_kind, edge_format, remap, prob, explicit_path,
             fn_name, delta, mode, groups_path, eps, ell, k, seed, workers,
             output, fmt, trace_path, trace_timings, summary):
    """Estimate centralities with the two-phase RR-set algorithm."""
    cfg: Config = ctx.obj['config']

    with _handle_errors():
        f = parse_function(fn_name, delta)
        if not f.is_additive:
            raise ValidationError("estimate supports the additive functions deg, har, rch and soi")
        model = load_model(input_path, model_kind, edge_format, remap, prob, explicit_path)
        centrality_mode = CentralityMode(mode)

        est_config = EstimatorConfig(
            g=f.g,
            eps=_pick(eps, cfg.estimator.eps),
            ell=_pick(ell, cfg.estimator.ell),
            k=_pick(k, cfg.estimator.k),
            mode=centrality_mode,
            groups=_load_groups(centrality_mode, groups_path, model.graph),
            seed=_pick(seed, cfg.estimator.seed),
            workers=_pick(workers, cfg.estimator.workers),
            max_rr_sets=cfg.estimator.max_rr_sets
        )
        include_timings = trace_timings or cfg.output.include_timings

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("{task.completed} RR sets"),
            TimeElapsedColumn(),
            console=console,
            transient=True
        ) as progress:
            task = progress.add_task("Sampling", total=None)
            estimator = IceRREstimator(model, est_config, progress=lambda count: progress.advance(task, count))
            report, trace = estimator.estimate()

        for warning in trace.warnings:
            logger.warning(warning)

        _emit_report(report, output, _pick(fmt, cfg.output.format), trace, include_timings)
        if trace_path:
            JSONReporter().export_trace(trace, trace_path, include_timings)
            console.print(f"[green]✓ Trace saved to: {trace_path}[/]")
        if summary:
            reporter = ConsoleReporter(console)
            reporter.print_report(report)
            reporter.print_trace(trace)


@main.command()
@model_options
@function_options
@click.option('--bfs', is_flag=True, help='Ignore model weights and use the BFS instance of the graph')
@click.option('--coalition-limit', type=int, help='Truncate Shapley coalitions below this size')
@click.option('--permutation-samples', type=int, help='Monte Carlo permutations for Shapley runs above the exact size limit')
@click.option('--seed', type=int, help='Random seed for the Monte Carlo fallback')
@output_options
@click.option('--summary', is_flag=True, help='Print a summary table on standard error')
@click.pass_context
def exact(ctx, input_path, model_kind, edge_format, remap, prob, explicit_path,
          fn_name, delta, mode, groups_path, bfs, coalition_limit, permutation_samples, seed,
          output, fmt, summary):
    """Compute centralities exactly by enumerating live-edge outcomes."""
    cfg: Config = ctx.obj['config']

    with _handle_errors():
        f: DistanceFunction = parse_function(fn_name, delta)
        model = load_model(input_path, model_kind, edge_format, remap, prob, explicit_path)
        centrality_mode = CentralityMode(mode)
        groups = _load_groups(centrality_mode, groups_path, model.graph)
        if coalition_limit is not None and (coalition_limit < 1 or centrality_mode is not CentralityMode.SHAPLEY):
            raise ValidationError("--coalition-limit needs --mode shapley and a positive value")

        if bfs:
            if coalition_limit is not None:
                raise ValidationError("--coalition-limit is not available with --bfs")
            report = graph_centrality(
                model.graph, f, centrality_mode, groups,
                permutation_samples=_pick(permutation_samples, cfg.exact.permutation_samples),
                seed=_pick(seed, cfg.estimator.seed),
                exact_max_n=cfg.exact.graph_shapley_exact_max_n
            )
        else:
            report = exact_influence_centrality(
                model, f, centrality_mode, groups,
                max_outcomes=cfg.exact.max_outcomes,
                exact_max_n=cfg.exact.shapley_exact_max_n,
                coalition_limit=coalition_limit,
                permutation_samples=_pick(permutation_samples, cfg.exact.permutation_samples),
                seed=_pick(seed, cfg.estimator.seed)
            )

        _emit_report(report, output, _pick(fmt, cfg.output.format))
        if summary:
            ConsoleReporter(console).print_report(report)


@main.command('basis-check')
@click.option('--n', 'n', type=int, default=3, show_default=True, help='Number of vertices')
@click.option('--allow-n5', is_flag=True, help='Allow n=5 (slow)')
@click.option('--input', '-i', 'input_path', type=click.Path(exists=True, dir_okay=False),
              help='Also decompose the exact profile of this instance')
@click.option('--model', '-m', 'model_kind', type=click.Choice(['ic', 'lt', 'explicit']), default='ic')
@click.option('--edge-format', type=click.Choice(['auto'] + [f.value for f in EdgeFormat]), default='auto')
@click.option('--prob', type=float, default=0.1)
@click.option('--explicit', 'explicit_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--coefficients', 'coefficients_path', help='Write the coefficient dump as CSV')
@click.pass_context
def basis_check(ctx, n, allow_n5, input_path, model_kind, edge_format, prob, explicit_path, coefficients_path):
    """Check that layered-graph instances form a basis of the profile space."""
    cfg: Config = ctx.obj['config']

    with _handle_errors():
        allow_large = allow_n5 or cfg.exact.basis_max_n >= 5
        decomposition = None
        if input_path:
            model = load_model(input_path, model_kind, edge_format, False, prob, explicit_path)
            n = model.n
            index = layered_basis(n, allow_large).index
            decomposition = decompose(exact_profile(model, index, cfg.exact.max_outcomes), allow_large)

        check = basis_rank_check(n, allow_large)
        click.echo(check.summary())
        ConsoleReporter(console).print_basis_check(check, decomposition)

        if decomposition is not None:
            if coefficients_path:
                path = CSVReporter().export_coefficients(decomposition, coefficients_path)
                console.print(f"[green]✓ Coefficients saved to: {path}[/]")
        elif coefficients_path:
            raise ValidationError("--coefficients needs --input")

        if not check.full_rank:
            console.print("[red]Layered instances are not linearly independent[/]")
            sys.exit(1)


@main.command()
@model_options
@click.option('--seeds', 'seeds_text', required=True, help='Seed set as comma-separated node ids')
@click.option('--runs', type=int, default=100, show_default=True, help='Number of cascades')
@click.option('--seed', type=int, help='Random seed')
@click.option('--output', '-o', help='Output CSV path (standard output when omitted)')
@click.pass_context
def simulate(ctx, input_path, model_kind, edge_format, remap, prob, explicit_path,
             seeds_text, runs, seed, output):
    """Simulate cascades from a seed set and write their activation steps."""
    cfg: Config = ctx.obj['config']

    with _handle_errors():
        if runs < 1:
            raise ValidationError("--runs must be at least 1")
        model = load_model(input_path, model_kind, edge_format, remap, prob, explicit_path)
        seed_set = parse_node_set(seeds_text, model.graph)
        rng = RngStream(_pick(seed, cfg.estimator.seed))

        cascades = [simulate_cascade(model, seed_set, rng) for _ in range(runs)]
        sizes = np.array([sum(1 for d in seq.times if d is not INF) for seq in cascades], dtype=np.float64)
        stderr = float(sizes.std(ddof=1) / np.sqrt(runs)) if runs > 1 else 0.0
        console.print(f"[cyan]σ({seeds_text}) ≈ {sizes.mean():.4f} ± {stderr:.4f} over {runs} runs[/]")

        frame = CSVReporter().cascades_frame(cascades, model.graph.labels)
        _write_text(frame.to_csv(index=False, lineterminator='\n'), output, "Cascades")


@main.command('rr-dump')
@model_options
@click.option('--count', type=int, default=10, show_default=True, help='Number of RR sets')
@click.option('--seed', type=int, help='Random seed')
@click.option('--output', '-o', help='Output path (standard output when omitted)')
@click.pass_context
def rr_dump(ctx, input_path, model_kind, edge_format, remap, prob, explicit_path, count, seed, output):
    """Write raw RR sets as `root | u:dist,...` lines."""
    cfg: Config = ctx.obj['config']

    with _handle_errors():
        if count < 1:
            raise ValidationError("--count must be at least 1")
        model = load_model(input_path, model_kind, edge_format, remap, prob, explicit_path)
        rng = RngStream(_pick(seed, cfg.estimator.seed))
        rr_sets = [sample_rr_set(model, rng) for _ in range(count)]
        _write_text(CSVReporter().render_rr_sets(rr_sets, model.graph.labels), output, "RR sets")


@main.command()
@click.option('--input', '-i', 'input_path', required=True, type=click.Path(exists=True, dir_okay=False),
              help='Edge-list file')
@click.option('--edge-format', type=click.Choice(['auto'] + [f.value for f in EdgeFormat]), default='auto')
@click.option('--remap', is_flag=True, help='Treat node ids as labels and remap them densely')
@click.option('--sources', 'sources_text', required=True, help='Source nodes, comma-separated')
@click.option('--reverse', is_flag=True, help='Distances to a single target instead of from the sources')
@click.option('--output', '-o', help='Output CSV path (standard output when omitted)')
def distances(input_path, edge_format, remap, sources_text, reverse, output):
    """Write BFS distances as `node,distance` (unreachable nodes as inf)."""
    with _handle_errors():
        graph = _read_graph(input_path, edge_format, remap, EdgeFormat.IC_WEIGHTED).graph
        sources: Tuple[int, ...] = tuple(sorted(parse_node_set(sources_text, graph)))
        if reverse:
            if len(sources) != 1:
                raise ValidationError("--reverse takes exactly one target")
            dist = reverse_bfs_distances(graph, sources[0])
        else:
            dist = bfs_distances(graph, sources)
        _write_text(CSVReporter().render_distances(dist, graph.labels), output, "Distances")
