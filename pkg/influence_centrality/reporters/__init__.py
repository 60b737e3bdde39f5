"""Report generators for centrality results."""

from .console_reporter import ConsoleReporter
from .csv_reporter import CSVReporter, format_value
from .json_reporter import JSONReporter

__all__ = ['ConsoleReporter', 'CSVReporter', 'JSONReporter', 'format_value']
