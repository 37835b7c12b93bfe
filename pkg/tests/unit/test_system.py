# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides unit tests for the core system types."""

import itertools

import pytest

from ska_ilc_counter.core import (
    Row,
    System,
    SystemStatus,
    assign,
    inf_activity,
    make_inconsistent,
    restrict,
    row_inf,
    row_sup,
    settle_trivial_rows,
    sup_activity,
    valid_count,
)
from ska_ilc_counter.oracle import oracle_count

from .conftest import Helpers


class TestRow:
    """Test the canonical row form."""

    def test_from_terms_is_canonical(self) -> None:
        """Test repeated variables are merged, zeros dropped and ids sorted."""
        row = Row.from_terms([(3, 2), (1, 4), (3, -2), (2, 0), (1, 1)], 7)
        assert row.terms == ((1, 5),)
        assert row.support == (1,)
        assert row.rhs == 7

    def test_coefficient_and_evaluate(self) -> None:
        """Test coefficient lookup and left-hand side evaluation."""
        row = Row.from_terms({1: -1, 2: 1, 3: 3}, 2)
        assert row.coefficient(3) == 3
        assert row.coefficient(4) == 0
        assert row.evaluate({1: 1, 2: 2, 3: 0}) == 1

    def test_without_moves_term_to_rhs(self) -> None:
        """Test substitution of a value."""
        row = Row.from_terms({1: 2, 2: 1}, 12)
        assert row.without(1, 5) == Row(((2, 1),), 2)
        assert row.without(7, 5) is row


class TestActivity:
    """Test the minimal and maximal activities."""

    def test_example_row_three(self, example: System) -> None:
        """Test the activities of the third example row.

        :param example: the worked example.
        """
        assert sup_activity(example, 3) == 12
        assert inf_activity(example, 3) == -3
        assert sup_activity(example, 3, exclude=2) == 9
        assert inf_activity(example, 3, exclude=2) == -3

    def test_exclusion_consistency(self, example: System) -> None:
        """Test excluding a variable removes exactly its extreme term.

        :param example: the worked example.
        """
        for i, row in example.rows.items():
            for j, a in row.terms:
                upper_term = a * example.upper[j] if a > 0 else a * example.lower[j]
                lower_term = a * example.lower[j] if a > 0 else a * example.upper[j]
                assert sup_activity(example, i, exclude=j) + upper_term == (
                    sup_activity(example, i)
                )
                assert inf_activity(example, i, exclude=j) + lower_term == (
                    inf_activity(example, i)
                )

    def test_bounds_hold_at_every_point(self, example: System) -> None:
        """Test every point of the box lies between the activities.

        :param example: the worked example.
        """
        for point in itertools.product(range(4), repeat=3):
            values = dict(zip((1, 2, 3), point))
            for i, row in example.rows.items():
                activity = row.evaluate(values)
                assert inf_activity(example, i) <= activity <= sup_activity(example, i)

    def test_empty_support(self, example: System) -> None:
        """Test the activities of a row without variables.

        :param example: the worked example.
        """
        empty = Row((), 5)
        assert row_sup(example, empty) == 0
        assert row_inf(example, empty) == 0

    def test_subset_of_support(self, example: System) -> None:
        """Test restricting the activity to some variables.

        :param example: the worked example.
        """
        row = example.rows[3]
        assert row_sup(example, row, among=[3]) == 9
        assert row_inf(example, row, among=[1, 2]) == -3


class TestAssign:
    """Test value substitution."""

    def test_example_assignment(self, example: System) -> None:
        """Test substituting x1 = 1 into the worked example.

        :param example: the worked example.
        """
        reduced = assign(example, 1, 1)
        assert reduced.variables == frozenset({2, 3})
        assert [reduced.rows[i].rhs for i in sorted(reduced.rows)] == [2, 2, 3, 6]
        assert all(1 not in row.support for row in reduced.rows.values())
        # The input is left untouched.
        assert example.variables == frozenset({1, 2, 3})
        assert example.rows[1].rhs == 3

    def test_unused_variable(self) -> None:
        """Test assigning a variable that appears in no row."""
        system = System.build([Row.from_terms({1: 1}, 2)], {1: (0, 3), 2: (0, 3)})
        reduced = assign(system, 2, 1)
        assert reduced.rows == system.rows
        assert reduced.variables == frozenset({1})

    @pytest.mark.parametrize("value", [-1, 4])
    def test_out_of_domain(self, example: System, value: int) -> None:
        """Test values outside the domain are rejected.

        :param example: the worked example.
        :param value: an invalid value.
        """
        with pytest.raises(ValueError, match="outside the domain"):
            assign(example, 1, value)

    @pytest.mark.parametrize("seed", range(25))
    def test_branches_sum_to_count(self, seed: int) -> None:
        """Test the counts of all values of a variable add up.

        :param seed: seed of the random system.
        """
        system = Helpers.random_system(seed, max_variables=4)
        j = min(system.variables)
        total = sum(
            oracle_count(assign(system, j, v))
            for v in range(system.lower[j], system.upper[j] + 1)
        )
        assert total == oracle_count(system)


class TestSystem:
    """Test system construction and classification."""

    @pytest.mark.parametrize(
        "bounds,expected",
        [
            pytest.param({1: (0, 3), 2: (0, 3), 3: (0, 3)}, 64, id="cube"),
            pytest.param({}, 1, id="no variables"),
            pytest.param({1: (5, 5)}, 1, id="fixed"),
        ],
    )
    def test_valid_count(self, bounds: dict, expected: int) -> None:
        """Test the count of a system without rows.

        :param bounds: variable bounds.
        :param expected: expected count.
        """
        system = System.build([], bounds)
        assert system.status is SystemStatus.VALID
        assert valid_count(system) == expected

    def test_valid_count_with_rows(self, example: System) -> None:
        """Test the product is refused while rows remain.

        :param example: the worked example.
        """
        with pytest.raises(ValueError, match="live rows"):
            valid_count(example)

    def test_make_inconsistent(self) -> None:
        """Test the inconsistent system."""
        system = make_inconsistent()
        assert system.status is SystemStatus.INCONSISTENT
        assert oracle_count(system) == 0

    def test_status(self, example: System) -> None:
        """Test an ordinary system is open.

        :param example: the worked example.
        """
        assert example.status is SystemStatus.OPEN
        assert example.domain_size(2) == 4

    @pytest.mark.parametrize(
        "rows,bounds,message",
        [
            pytest.param(
                {1: Row(((1, 0),), 1)}, {1: (0, 1)}, "zero coefficient", id="zero"
            ),
            pytest.param(
                {1: Row(((2, 1),), 1)}, {1: (0, 1)}, "undeclared", id="undeclared"
            ),
            pytest.param(
                {1: Row(((2, 1), (1, 1)), 1)},
                {1: (0, 1), 2: (0, 1)},
                "ascending",
                id="order",
            ),
            pytest.param({}, {1: (2, 1)}, "empty domain", id="empty domain"),
        ],
    )
    def test_validation(self, rows: dict, bounds: dict, message: str) -> None:
        """Test malformed systems are rejected.

        :param rows: rows of the system.
        :param bounds: variable bounds.
        :param message: expected error fragment.
        """
        with pytest.raises(ValueError, match=message):
            System.build(rows, bounds)

    def test_settle_trivial_rows(self) -> None:
        """Test empty-support rows are dropped or make the system inconsistent."""
        system = System(
            {1: Row((), 0), 2: Row(((1, 1),), 1), 3: Row((), 4)},
            {1: 0},
            {1: 3},
            frozenset({1}),
        )
        settled = settle_trivial_rows(system)
        assert list(settled.rows) == [2]

        conflicting = system.with_rows({1: Row((), -1), 2: Row(((1, 1),), 1)})
        assert settle_trivial_rows(conflicting).status is SystemStatus.INCONSISTENT

    def test_restrict(self, example: System) -> None:
        """Test building a component subsystem.

        :param example: the worked example.
        """
        subsystem = restrict(example, [1, 2, 3], [2, 4])
        assert sorted(subsystem.rows) == [2, 4]
        assert subsystem.variables == frozenset({1, 2, 3})
        assert subsystem.lower == {1: 0, 2: 0, 3: 0}

    def test_structural_equality(self, example: System) -> None:
        """Test structural comparison of systems.

        :param example: the worked example.
        """
        assert example.structurally_equal(example.with_rows(dict(example.rows)))
        assert not example.structurally_equal(
            example.with_bounds(dict(example.lower), {1: 2, 2: 3, 3: 3})
        )
