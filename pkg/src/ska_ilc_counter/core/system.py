# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the domain types for systems of integer linear constraints."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, TypeAlias

# Activities are always finite: every variable carries finite integer bounds.
Activity: TypeAlias = int


class SystemStatus(Enum):
    """Classification of a system of constraints."""

    OPEN = "open"
    VALID = "valid"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class Row:
    """A single constraint ``sum(a_j * x_j) <= rhs``.

    Terms are stored sparsely as ``(variable_id, coefficient)`` pairs in
    ascending variable order, and never hold a zero coefficient.
    """

    terms: tuple[tuple[int, int], ...]
    rhs: int

    @classmethod
    def from_terms(
        cls, terms: Mapping[int, int] | Iterable[tuple[int, int]], rhs: int
    ) -> Row:
        """Create a row in canonical form.

        Coefficients of repeated variables are summed and zeros are dropped.

        :param terms: mapping or pairs of variable id to coefficient.
        :param rhs: right-hand side.
        :return: the canonical row.
        """
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[int, int] = {}
        for variable, coefficient in pairs:
            merged[variable] = merged.get(variable, 0) + coefficient
        return cls(
            tuple(sorted((j, a) for j, a in merged.items() if a != 0)),
            rhs,
        )

    @property
    def support(self) -> tuple[int, ...]:
        """Variable ids with a nonzero coefficient, ascending."""
        return tuple(j for j, _ in self.terms)

    def coefficient(self, variable: int) -> int:
        """Return the coefficient of a variable (0 when absent)."""
        for j, a in self.terms:
            if j == variable:
                return a
        return 0

    def evaluate(self, point: Mapping[int, int]) -> int:
        """Return the left-hand side at a point."""
        return sum(a * point[j] for j, a in self.terms)

    def without(self, variable: int, value: int) -> Row:
        """Substitute a value for a variable, moving its term to the rhs."""
        coefficient = self.coefficient(variable)
        if coefficient == 0:
            return self
        return Row(
            tuple((j, a) for j, a in self.terms if j != variable),
            self.rhs - coefficient * value,
        )


@dataclass(frozen=True)
class System:
    """A system of integer linear constraints ``(A, b, l, u, M, N)``.

    ``rows`` houses A, b and the live row ids M; ``lower``/``upper`` house the
    bounds l and u; ``variables`` is the live variable set N. Instances are
    never mutated once built: every operation returns a new System.
    """

    rows: dict[int, Row]
    lower: dict[int, int]
    upper: dict[int, int]
    variables: frozenset[int]
    inconsistent: bool = field(default=False)

    @classmethod
    def build(
        cls,
        rows: Iterable[Row] | Mapping[int, Row],
        bounds: Mapping[int, tuple[int, int]],
    ) -> System:
        """Create and validate a system.

        :param rows: rows, either as a sequence (ids assigned from 1) or a
            mapping of row id to row.
        :param bounds: mapping of variable id to ``(lower, upper)``.
        :return: the validated system.
        :raises: ValueError if the system is malformed.
        """
        if isinstance(rows, Mapping):
            row_map = dict(rows)
        else:
            row_map = {i: row for i, row in enumerate(rows, start=1)}
        system = cls(
            row_map,
            {j: lo for j, (lo, _) in bounds.items()},
            {j: hi for j, (_, hi) in bounds.items()},
            frozenset(bounds),
        )
        system.validate()
        return system

    def validate(self) -> None:
        """Check the structural invariants.

        :raises: ValueError if an invariant is violated.
        """
        for i, row in self.rows.items():
            previous: Optional[int] = None
            for j, a in row.terms:
                if a == 0:
                    raise ValueError(f"Row {i} stores a zero coefficient for x{j}")
                if j not in self.variables:
                    raise ValueError(f"Row {i} references undeclared variable x{j}")
                if previous is not None and j <= previous:
                    raise ValueError(f"Row {i} terms are not in ascending order")
                previous = j
        for j in self.variables:
            if j not in self.lower or j not in self.upper:
                raise ValueError(f"Variable x{j} has no bounds")
            if self.lower[j] > self.upper[j] and not self.inconsistent:
                raise ValueError(
                    f"Variable x{j} has an empty domain "
                    f"[{self.lower[j]}, {self.upper[j]}]"
                )

    @property
    def status(self) -> SystemStatus:
        """Return whether the system is open, valid or inconsistent."""
        if self.inconsistent:
            return SystemStatus.INCONSISTENT
        if not self.rows:
            return SystemStatus.VALID
        return SystemStatus.OPEN

    def domain_size(self, variable: int) -> int:
        """Return ``u_j - l_j + 1``."""
        return self.upper[variable] - self.lower[variable] + 1

    def with_rows(self, rows: dict[int, Row]) -> System:
        """Return a copy with a new row map."""
        return System(rows, self.lower, self.upper, self.variables)

    def with_bounds(self, lower: dict[int, int], upper: dict[int, int]) -> System:
        """Return a copy with new bounds."""
        return System(self.rows, lower, upper, self.variables)

    def structurally_equal(self, other: System) -> bool:
        """Compare row set, rhs vector and bounds."""
        return (
            self.inconsistent == other.inconsistent
            and self.rows == other.rows
            and self.lower == other.lower
            and self.upper == other.upper
            and self.variables == other.variables
        )


def _term_sup(coefficient: int, lower: int, upper: int) -> int:
    return coefficient * (upper if coefficient > 0 else lower)


def _term_inf(coefficient: int, lower: int, upper: int) -> int:
    return coefficient * (lower if coefficient > 0 else upper)


def row_sup(
    system: System, row: Row, among: Optional[Iterable[int]] = None
) -> Activity:
    """Return the maximal activity of a row, optionally over a variable subset.

    :param system: system providing the bounds.
    :param row: the row.
    :param among: restrict the sum to these variables (``A_{iN'}``).
    :return: the maximal activity.
    """
    keep = None if among is None else set(among)
    return sum(
        _term_sup(a, system.lower[j], system.upper[j])
        for j, a in row.terms
        if keep is None or j in keep
    )


def row_inf(
    system: System, row: Row, among: Optional[Iterable[int]] = None
) -> Activity:
    """Return the minimal activity of a row, optionally over a variable subset.

    :param system: system providing the bounds.
    :param row: the row.
    :param among: restrict the sum to these variables (``A_{iN'}``).
    :return: the minimal activity.
    """
    keep = None if among is None else set(among)
    return sum(
        _term_inf(a, system.lower[j], system.upper[j])
        for j, a in row.terms
        if keep is None or j in keep
    )


def sup_activity(
    system: System, row_id: int, exclude: Optional[int] = None
) -> Activity:
    """Return ``sup(A_{i.})``, or ``sup(A_{iN_{-j}})`` when excluding ``j``.

    :param system: the system.
    :param row_id: a live row id.
    :param exclude: optional live variable to leave out of the sum.
    :return: the maximal activity.
    """
    row = system.rows[row_id]
    total = row_sup(system, row)
    if exclude is not None:
        a = row.coefficient(exclude)
        total -= _term_sup(a, system.lower[exclude], system.upper[exclude])
    return total


def inf_activity(
    system: System, row_id: int, exclude: Optional[int] = None
) -> Activity:
    """Return ``inf(A_{i.})``, or ``inf(A_{iN_{-j}})`` when excluding ``j``.

    :param system: the system.
    :param row_id: a live row id.
    :param exclude: optional live variable to leave out of the sum.
    :return: the minimal activity.
    """
    row = system.rows[row_id]
    total = row_inf(system, row)
    if exclude is not None:
        a = row.coefficient(exclude)
        total -= _term_inf(a, system.lower[exclude], system.upper[exclude])
    return total


def assign(system: System, variable: int, value: int) -> System:
    """Substitute ``x_j = v``, returning ``Phi_[x_j = v]``.

    :param system: the system (left untouched).
    :param variable: a live variable id.
    :param value: a value inside the variable's domain.
    :return: the system over the remaining variables.
    :raises: ValueError if the value is outside the domain.
    """
    if variable not in system.variables:
        raise ValueError(f"x{variable} is not a live variable")
    if not system.lower[variable] <= value <= system.upper[variable]:
        raise ValueError(
            f"Value {value} is outside the domain of x{variable}: "
            f"[{system.lower[variable]}, {system.upper[variable]}]"
        )
    rows = {i: row.without(variable, value) for i, row in system.rows.items()}
    lower = dict(system.lower)
    upper = dict(system.upper)
    del lower[variable]
    del upper[variable]
    return System(
        rows, lower, upper, system.variables - {variable}, system.inconsistent
    )


def valid_count(system: System) -> int:
    """Return ``prod(u_j - l_j + 1)`` for a system with no live rows.

    :param system: a valid system.
    :return: the number of solutions.
    :raises: ValueError if live rows remain.
    """
    if system.rows:
        raise ValueError(f"System still has {len(system.rows)} live rows")
    return math.prod(system.domain_size(j) for j in system.variables)


def make_inconsistent() -> System:
    """Return the inconsistent system ``0 * x_1 <= -1``."""
    return System({1: Row((), -1)}, {1: 0}, {1: 0}, frozenset({1}), inconsistent=True)


def settle_trivial_rows(system: System) -> System:
    """Classify rows with an empty support.

    ``0 <= b`` rows are dropped when ``b >= 0``; any ``b < 0`` makes the
    system inconsistent.

    :param system: the system.
    :return: the system without empty-support rows, or the inconsistent one.
    """
    if system.inconsistent:
        return system
    empty = [i for i, row in system.rows.items() if not row.terms]
    if not empty:
        return system
    if any(system.rows[i].rhs < 0 for i in empty):
        return make_inconsistent()
    return system.with_rows(
        {i: row for i, row in system.rows.items() if row.terms}
    )


def restrict(
    system: System, variables: Iterable[int], row_ids: Iterable[int]
) -> System:
    """Return the subsystem ``(A, b, l, u, M_i, N_i)`` of a component.

    :param system: the system.
    :param variables: the component's variables.
    :param row_ids: the component's rows.
    :return: the subsystem.
    """
    keep = frozenset(variables)
    return System(
        {i: system.rows[i] for i in sorted(row_ids)},
        {j: system.lower[j] for j in keep},
        {j: system.upper[j] for j in keep},
        keep,
    )
