"""Console reporter - outputs tables to the terminal using Rich."""

from typing import Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..models.profile import BasisDecomposition
from ..models.report import CentralityMode, CentralityReport, ComputationMethod, EstimationTrace
from ..profiles.basis import BasisCheck
from .csv_reporter import format_value


class ConsoleReporter:
    """
    Generates console summaries using Rich library.

    Independent module that only knows about data models.
    """

    def __init__(self, console: Console = None):
        """
        Initialize console reporter.

        Args:
            console: Rich Console instance (creates a stderr console if None)
        """
        self.console = console or Console(stderr=True)

    def print_report(self, report: CentralityReport, limit: int = 10):
        """
        Print header and the top entries of a centrality report.

        Args:
            report: Report to print
            limit: Number of rows in the top table
        """
        self._print_header(report)
        self._print_top(report, limit)

    def _print_header(self, report: CentralityReport):
        """Print report header."""
        title = Text(f"{report.mode.value.upper()} CENTRALITY", style="bold white on blue")
        lines = [f"Function: {report.function}", f"Method: {report.method.value}"]
        lines.extend(f"{name}: {value}" for name, value in report.parameters.items())
        if report.mode is CentralityMode.SHAPLEY:
            lines.append(f"Total (efficiency): {float(report.total):.6g}")

        self.console.print(Panel("\n".join(lines), title=title, border_style="blue", padding=(1, 2)))

    def _print_top(self, report: CentralityReport, limit: int):
        """Print highest values."""
        estimated = report.method is ComputationMethod.ESTIMATED
        table = Table(title=f"Top {limit}", box=box.SIMPLE)
        table.add_column("#", justify="right", style="dim")
        table.add_column("Group" if report.mode is CentralityMode.GROUP else "Node", style="cyan")
        table.add_column("Value", justify="right")
        if report.standard_errors:
            table.add_column("± stderr", justify="right", style="dim")

        for idx, (key, value) in enumerate(report.top(limit), 1):
            row = [str(idx), report.key_label(key), f"{float(value):.6g}"]
            if report.standard_errors:
                row.append(f"{report.standard_errors[key]:.3g}")
            table.add_row(*row)

        self.console.print(table)
        if estimated and not report.standard_errors:
            self.console.print("[dim]Values are (ε, ℓ)-estimates[/]")

    def print_trace(self, trace: EstimationTrace):
        """Print the phase-1 schedule and sample counts of an estimator run."""
        table = Table(title="Phase 1", box=box.ROUNDED)
        table.add_column("i", justify="right")
        table.add_column("x", justify="right")
        table.add_column("θ_i", justify="right")
        table.add_column("est^(k)", justify="right")
        table.add_column("Stop", justify="center")

        for it in trace.iterations:
            table.add_row(
                str(it.i),
                f"{it.x:.4g}",
                str(it.theta_i),
                f"{it.est_k:.4g}",
                "[green]✓[/]" if it.stopped else ""
            )

        self.console.print(table)
        self.console.print(
            f"LB={trace.lower_bound:.6g}  θ={trace.theta}  "
            f"RR sets={trace.rr_sets_generated}  mean |R|={trace.mean_rr_size:.3f}"
        )
        for warning in trace.warnings:
            self.console.print(f"[yellow]⚠ {warning}[/]")

    def print_basis_check(self, check: BasisCheck, decomposition: Optional[BasisDecomposition] = None):
        """Print the rank result and, when given, a decomposition summary."""
        colour = "green" if check.full_rank else "red"
        table = Table(title=f"Layered basis, n={check.n}", box=box.ROUNDED)
        table.add_column("Metric", style="cyan", no_wrap=True)
        table.add_column("Value", justify="right")
        table.add_row("Sequences (M)", str(check.dimension))
        table.add_row("Layered instances |L|", str(check.spec_count))
        table.add_row("Rank", f"[{colour}]{check.rank}[/]")
        table.add_row("Seconds", f"{check.seconds:.2f}")

        if decomposition is not None:
            table.add_row("", "")
            table.add_row("Non-zero coefficients", str(len(decomposition.nonzero())))
            table.add_row("Σλ", format_value(decomposition.coefficient_sum))
            table.add_row("Residual", f"{decomposition.residual:.3g}")
            table.add_row("Exact", "yes" if decomposition.exact else "no")

        self.console.print(table)
