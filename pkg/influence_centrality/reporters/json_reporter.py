"""JSON reporter - full report with metadata and optional estimator trace."""

import json
from pathlib import Path
from typing import Any, Dict, Optional

from ..models.report import CentralityMode, CentralityReport, EstimationTrace


class JSONReporter:
    """
    Serializes centrality reports to JSON.

    Independent module that only knows about data models.
    """

    def build(
        self,
        report: CentralityReport,
        trace: Optional[EstimationTrace] = None,
        include_timings: bool = False
    ) -> Dict[str, Any]:
        """Plain-dict form of a report; the trace is attached when given."""
        key_name = 'group' if report.mode is CentralityMode.GROUP else 'node'
        entries = []
        for key, value in report.values.items():
            entry = {key_name: report.key_label(key), 'value': float(value)}
            if report.standard_errors:
                entry['stderr'] = float(report.standard_errors[key])
            entries.append(entry)

        data: Dict[str, Any] = {
            'metadata': {
                'generated_by': report.generated_by,
                'version': report.version,
                'mode': report.mode.value,
                'function': report.function,
                'method': report.method.value,
                'parameters': dict(report.parameters),
            },
            'values': entries,
        }
        if trace is not None:
            data['trace'] = trace.to_dict(include_timings=include_timings)
        return data

    def render(
        self,
        report: CentralityReport,
        trace: Optional[EstimationTrace] = None,
        include_timings: bool = False
    ) -> str:
        return json.dumps(self.build(report, trace, include_timings), indent=2, default=str) + '\n'

    def export_to_json(
        self,
        report: CentralityReport,
        output_path: str,
        trace: Optional[EstimationTrace] = None,
        include_timings: bool = False
    ) -> Path:
        """
        Export report to JSON file.

        Args:
            report: Centrality report
            output_path: Output file path
            trace: Estimator trace to embed
            include_timings: Also serialize wall-clock timings

        Returns:
            Path to generated file
        """
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        output_file.write_text(self.render(report, trace, include_timings), encoding='utf-8')
        return output_file

    def export_trace(self, trace: EstimationTrace, output_path: str, include_timings: bool = False) -> Path:
        """Write an estimator trace on its own."""
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(trace.to_dict(include_timings=include_timings), indent=2)
        output_file.write_text(text + '\n', encoding='utf-8')
        return output_file
