# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the command line interface and benchmark harness."""

__all__ = [
    "BenchPublisher",
    "BenchRecord",
    "BenchRunner",
    "BenchWorkers",
    "CSV_COLUMNS",
    "ConfigSummary",
    "CsvRecordWriter",
    "ExitCode",
    "build_parser",
    "disagreements",
    "main",
    "summarize",
]

from .bench import (
    CSV_COLUMNS,
    BenchPublisher,
    BenchRecord,
    BenchRunner,
    BenchWorkers,
    ConfigSummary,
    CsvRecordWriter,
    disagreements,
    summarize,
)
from .ilc_counter import ExitCode, build_parser, main
