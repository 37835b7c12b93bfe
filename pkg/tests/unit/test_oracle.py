# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides unit tests for the brute-force oracle."""

import itertools

import pytest

from ska_ilc_counter.core import Row, System, make_inconsistent
from ska_ilc_counter.oracle import BudgetExceededError, oracle_count, oracle_solutions

from .conftest import EXAMPLE_SOLUTIONS, Helpers


class TestOracle:
    """Test enumeration of solutions."""

    def test_example_solutions(self, example: System) -> None:
        """Test the worked example lists exactly its 8 solutions.

        :param example: the worked example.
        """
        assert oracle_solutions(example) == EXAMPLE_SOLUTIONS
        assert oracle_count(example) == 8

    def test_no_rows(self) -> None:
        """Test a system without rows yields its whole box."""
        system = System.build([], {1: (-1, 0), 2: (2, 3)})
        assert oracle_solutions(system) == [(-1, 2), (-1, 3), (0, 2), (0, 3)]

    def test_no_variables(self) -> None:
        """Test the empty assignment is checked against empty-support rows."""
        satisfied = System({1: Row((), 0)}, {}, {}, frozenset())
        violated = System({1: Row((), -1)}, {}, {}, frozenset())
        assert oracle_count(satisfied) == 1
        assert oracle_count(violated) == 0

    def test_inconsistent(self) -> None:
        """Test the inconsistent system has no solutions."""
        assert oracle_solutions(make_inconsistent()) == []

    def test_budget(self) -> None:
        """Test a box larger than the budget is refused."""
        system = System.build([], {j: (0, 9) for j in range(1, 5)})
        with pytest.raises(BudgetExceededError) as error:
            oracle_count(system, budget=9999)
        assert error.value.points == 10_000
        assert error.value.budget == 9999
        assert oracle_count(system, budget=10_000) == 10_000

    def test_invalid_budget(self, example: System) -> None:
        """Test the budget must be positive.

        :param example: the worked example.
        """
        with pytest.raises(ValueError, match="positive"):
            oracle_count(example, budget=0)

    def test_large_coefficients(self) -> None:
        """Test activities beyond 64 bits are evaluated exactly."""
        big = 2**70
        system = System.build(
            [Row.from_terms({1: big, 2: -big}, 0)], {1: (0, 3), 2: (0, 3)}
        )
        assert oracle_count(system) == 10

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_itertools(self, seed: int) -> None:
        """Test against a direct product loop.

        :param seed: seed of the random system.
        """
        system = Helpers.random_system(seed, max_variables=4)
        order = sorted(system.variables)
        expected = []
        for point in itertools.product(
            *(range(system.lower[j], system.upper[j] + 1) for j in order)
        ):
            values = dict(zip(order, point))
            if all(row.evaluate(values) <= row.rhs for row in system.rows.values()):
                expected.append(point)
        assert oracle_solutions(system) == expected
