# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the exact linear programming oracle."""

__all__ = [
    "ExactLpSolver",
    "LpOutcome",
    "LpProblem",
    "LpSolverError",
    "LpStatus",
    "maximize",
    "minimize",
]

from .simplex import (
    ExactLpSolver,
    LpOutcome,
    LpProblem,
    LpSolverError,
    LpStatus,
    maximize,
    minimize,
)
