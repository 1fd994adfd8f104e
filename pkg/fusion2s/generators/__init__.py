"""Generators package for table and JSON output"""

from fusion2s.generators.report_generator import LEGEND, OutputFormat, ReportGenerator, render_entry

__all__ = [
    "LEGEND",
    "OutputFormat",
    "ReportGenerator",
    "render_entry",
]
