# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the simplification techniques and their pipeline."""

__all__ = [
    "LpSolver",
    "NormalizedRowKey",
    "SimplifyConfig",
    "SimplifyLog",
    "Technique",
    "remove_individual_rows",
    "remove_individual_rows_lp",
    "remove_parallel_rows",
    "remove_subset_rows",
    "remove_variables",
    "simplify",
    "strengthen_bounds",
    "strengthen_coefficients",
]

from .pipeline import SimplifyConfig, simplify
from .techniques import (
    LpSolver,
    NormalizedRowKey,
    SimplifyLog,
    Technique,
    remove_individual_rows,
    remove_individual_rows_lp,
    remove_parallel_rows,
    remove_subset_rows,
    remove_variables,
    strengthen_bounds,
    strengthen_coefficients,
)
