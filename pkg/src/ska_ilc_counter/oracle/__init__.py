# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the brute-force counting oracle."""

__all__ = [
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "oracle_count",
    "oracle_solutions",
]

from .brute_force import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    oracle_count,
    oracle_solutions,
)
