# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides a brute-force solution counter.

Every point of the variable box is enumerated and checked against every row.
It shares nothing with the search beyond the core types, so it is used to
cross-check the model counter.
"""

from __future__ import annotations

import math
from typing import Final, Iterator

import numpy as np

from ska_ilc_counter.core import System

DEFAULT_BUDGET: Final = 10**7
CHUNK_SIZE: Final = 1 << 16

# Largest magnitude an int64 intermediate is allowed to reach.
_INT64_SAFE: Final = 2**62


class BudgetExceededError(ValueError):
    """Raised when the box holds more points than the budget allows."""

    def __init__(self, points: int, budget: int) -> None:
        """Initialise the error.

        :param points: number of points in the box.
        :param budget: the budget that was exceeded.
        """
        super().__init__(f"Box holds {points} points, budget is {budget}")
        self.points = points
        self.budget = budget


def _fits_int64(system: System, variables: list[int]) -> bool:
    largest_value = max(
        (max(abs(system.lower[j]), abs(system.upper[j])) for j in variables),
        default=0,
    )
    for row in system.rows.values():
        bound = sum(abs(a) for _, a in row.terms) * largest_value + abs(row.rhs)
        if bound >= _INT64_SAFE:
            return False
    return True


def _satisfying_chunks(system: System, budget: int) -> Iterator[np.ndarray]:
    """Yield the satisfying points, one array of rows per chunk.

    Points are produced in odometer order: the variable with the largest id
    changes fastest.
    """
    if budget <= 0:
        raise ValueError(f"Budget must be positive, got {budget}")
    variables = sorted(system.variables)
    if system.inconsistent or any(
        system.lower[j] > system.upper[j] for j in variables
    ):
        return
    sizes = [system.domain_size(j) for j in variables]
    points = math.prod(sizes)
    if points > budget:
        raise BudgetExceededError(points, budget)

    column = {j: k for k, j in enumerate(variables)}
    dtype = np.int64 if _fits_int64(system, variables) else object
    lower = np.array([system.lower[j] for j in variables], dtype=dtype)
    rows = list(system.rows.values())

    for start in range(0, points, CHUNK_SIZE):
        index = np.arange(start, min(start + CHUNK_SIZE, points), dtype=np.int64)
        digits = np.empty((len(index), len(variables)), dtype=np.int64)
        for k in range(len(variables) - 1, -1, -1):
            digits[:, k] = index % sizes[k]
            index = index // sizes[k]
        values = digits.astype(dtype) + lower
        keep = np.ones(len(values), dtype=bool)
        for row in rows:
            activity = np.zeros(len(values), dtype=dtype)
            for j, a in row.terms:
                activity = activity + values[:, column[j]] * a
            keep &= np.asarray(activity <= row.rhs, dtype=bool)
        yield values[keep]


def oracle_count(system: System, budget: int = DEFAULT_BUDGET) -> int:
    """Count the solutions of a system by enumeration.

    :param system: the system.
    :param budget: largest number of points to enumerate.
    :return: the exact count.
    :raises: BudgetExceededError if the box is larger than the budget.
    """
    return sum(len(chunk) for chunk in _satisfying_chunks(system, budget))


def oracle_solutions(
    system: System, budget: int = DEFAULT_BUDGET
) -> list[tuple[int, ...]]:
    """List the solutions of a system by enumeration.

    :param system: the system.
    :param budget: largest number of points to enumerate.
    :return: the solutions in odometer order, each indexed by ascending
        variable id.
    :raises: BudgetExceededError if the box is larger than the budget.
    """
    return [
        tuple(int(v) for v in point)
        for chunk in _satisfying_chunks(system, budget)
        for point in chunk
    ]
