"""CSV reporter - exports centralities, distances and raw samples."""

import csv
import io
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from ..models.cascade import CascadingSequence
from ..models.graph import INF, DistanceVector, format_distance
from ..models.profile import BasisDecomposition
from ..models.report import CentralityMode, CentralityReport
from ..rr.sampler import RRSet


def format_value(value) -> str:
    """Shortest round-tripping text of a value (Fractions are converted to float)."""
    return repr(float(value))


class CSVReporter:
    """
    Exports centrality reports and auxiliary tables to CSV.

    Independent module that only knows about data models.
    """

    def render_report(self, report: CentralityReport) -> str:
        """
        Render a report as CSV text.

        Columns are `node,value` (or `group,value` in group mode), plus
        `stderr` when the values were estimated with standard errors.
        Rows follow node / group order.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')

        key_column = 'group' if report.mode is CentralityMode.GROUP else 'node'
        header = [key_column, 'value']
        if report.standard_errors:
            header.append('stderr')
        writer.writerow(header)

        for key, value in report.values.items():
            row = [report.key_label(key), format_value(value)]
            if report.standard_errors:
                row.append(format_value(report.standard_errors[key]))
            writer.writerow(row)

        return buffer.getvalue()

    def export_to_csv(self, report: CentralityReport, output_path: str) -> Path:
        """
        Export report to CSV file.

        Args:
            report: Centrality report
            output_path: Output file path

        Returns:
            Path to generated file
        """
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        output_file.write_text(self.render_report(report), encoding='utf-8')
        return output_file

    def render_distances(self, distances: DistanceVector, labels: Optional[Sequence[str]] = None) -> str:
        """`node,distance` rows, unreachable nodes as `inf`."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['node', 'distance'])
        for node, d in enumerate(distances):
            writer.writerow([labels[node] if labels else node, format_distance(d)])
        return buffer.getvalue()

    def coefficients_frame(self, decomposition: BasisDecomposition) -> pd.DataFrame:
        """One row per layered instance with a non-zero coefficient."""
        rows = [
            {'spec': spec.describe(), 'layers': spec.t + 1, 'coefficient': format_value(value)}
            for spec, value in decomposition.nonzero().items()
        ]
        return pd.DataFrame(rows, columns=['spec', 'layers', 'coefficient'])

    def export_coefficients(self, decomposition: BasisDecomposition, output_path: str) -> Path:
        """Write the coefficient dump of a basis decomposition."""
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        self.coefficients_frame(decomposition).to_csv(output_file, index=False)
        return output_file

    def cascades_frame(
        self,
        cascades: Iterable[CascadingSequence],
        labels: Optional[Sequence[str]] = None
    ) -> pd.DataFrame:
        """Long-format activation table: one row per (run, activated node)."""
        rows: List[Tuple] = []
        for run, seq in enumerate(cascades):
            for node, d in enumerate(seq.times):
                if d is not INF:
                    rows.append((run, labels[node] if labels else node, d))
        frame = pd.DataFrame(rows, columns=['run', 'node', 'step'])
        return frame.sort_values(['run', 'step', 'node'], kind='stable').reset_index(drop=True)

    def render_rr_sets(self, rr_sets: Iterable[RRSet], labels: Optional[Sequence[str]] = None) -> str:
        """One `root | u:dist,...` line per RR set."""
        return "".join(rr.format(labels) + '\n' for rr in rr_sets)

    def export_rr_sets(
        self,
        rr_sets: Iterable[RRSet],
        output_path: str,
        labels: Optional[Sequence[str]] = None
    ) -> Path:
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        output_file.write_text(self.render_rr_sets(rr_sets, labels), encoding='utf-8')
        return output_file
