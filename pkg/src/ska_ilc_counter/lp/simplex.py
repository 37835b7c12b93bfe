# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides an exact rational linear programming solver.

The solver is a two-phase, bounded-variable primal simplex. Box bounds are
handled natively: a nonbasic variable rests at its lower or upper bound, so
the tableau only has one row per constraint. Bland's smallest-index rule is
used for both the entering and the leaving choice, which rules out cycling.
All arithmetic is done with :class:`fractions.Fraction`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Final, Mapping, Optional, Sequence

from ska_ilc_counter.core import Row, System

_module_logger = logging.getLogger(__name__)

DEFAULT_ITERATION_LIMIT: Final = 100_000


class LpSolverError(RuntimeError):
    """Raised when the simplex breaks an internal guarantee."""


class LpStatus(Enum):
    """Outcome kinds of a linear program over a finite box."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LpProblem:
    """Optimise a linear objective subject to ``<=`` rows and box bounds."""

    objective: Mapping[int, Fraction]
    rows: Sequence[Row]
    lower: Mapping[int, Fraction]
    upper: Mapping[int, Fraction]

    @classmethod
    def from_system(
        cls,
        system: System,
        objective: Mapping[int, int],
        exclude_row: Optional[int] = None,
    ) -> LpProblem:
        """Build the continuous relaxation of a system.

        :param system: the system providing the rows and bounds.
        :param objective: objective coefficients by variable id.
        :param exclude_row: a row id to leave out of the constraints.
        :return: the LP problem.
        """
        return cls(
            {j: Fraction(a) for j, a in objective.items()},
            [row for i, row in sorted(system.rows.items()) if i != exclude_row],
            {j: Fraction(system.lower[j]) for j in system.variables},
            {j: Fraction(system.upper[j]) for j in system.variables},
        )

    @property
    def variables(self) -> list[int]:
        """Variable ids, ascending."""
        return sorted(self.lower)


@dataclass(frozen=True)
class LpOutcome:
    """Result of a solve: an optimum with its witness, or infeasibility."""

    status: LpStatus
    value: Optional[Fraction] = None
    witness: dict[int, Fraction] = field(default_factory=dict)


class _Tableau:  # pylint: disable=too-many-instance-attributes
    """Dense simplex tableau with bounded columns.

    Columns are ordered: problem variables (ascending id), one slack per
    row, then one artificial per row that starts infeasible.
    """

    def __init__(self, problem: LpProblem) -> None:
        self.variables = problem.variables
        index = {j: k for k, j in enumerate(self.variables)}
        n = len(self.variables)
        m = len(problem.rows)
        self.lower: list[Fraction] = [problem.lower[j] for j in self.variables]
        self.upper: list[Optional[Fraction]] = [
            problem.upper[j] for j in self.variables
        ]
        # Slacks are non-negative with no upper bound.
        self.lower += [Fraction(0)] * m
        self.upper += [None] * m
        self.value: list[Fraction] = list(self.lower)

        start_activity = [
            sum((a * self.lower[index[j]] for j, a in row.terms), Fraction(0))
            for row in problem.rows
        ]
        infeasible = [
            i for i, row in enumerate(problem.rows) if start_activity[i] > row.rhs
        ]
        self.artificials = list(range(n + m, n + m + len(infeasible)))
        self.lower += [Fraction(0)] * len(infeasible)
        self.upper += [None] * len(infeasible)
        self.value += [Fraction(0)] * len(infeasible)
        width = n + m + len(infeasible)

        self.table: list[list[Fraction]] = []
        self.basis: list[int] = []
        artificial_of = dict(zip(infeasible, self.artificials))
        for i, row in enumerate(problem.rows):
            line = [Fraction(0)] * width
            for j, a in row.terms:
                line[index[j]] = Fraction(a)
            line[n + i] = Fraction(1)
            slack_value = row.rhs - start_activity[i]
            if i in artificial_of:
                # a.x + s - r = b, with r basic: r = a.x + s - b
                r = artificial_of[i]
                line[r] = Fraction(-1)
                line = [-c for c in line]
                self.basis.append(r)
                self.value[r] = -slack_value
                self.value[n + i] = Fraction(0)
            else:
                self.basis.append(n + i)
                self.value[n + i] = Fraction(slack_value)
            self.table.append(line)
        self.width = width

    def run(self, cost: list[Fraction], iteration_limit: int) -> None:
        """Maximise ``cost . value`` from the current feasible basis."""
        for _ in range(iteration_limit):
            entering = self._entering(cost)
            if entering is None:
                return
            self._step(*entering)
        raise LpSolverError(f"Simplex exceeded {iteration_limit} iterations")

    def _entering(self, cost: list[Fraction]) -> Optional[tuple[int, int]]:
        basic = set(self.basis)
        for k in range(self.width):
            if k in basic:
                continue
            upper = self.upper[k]
            if upper is not None and upper == self.lower[k]:
                continue
            reduced = cost[k] - sum(
                (cost[b] * self.table[i][k] for i, b in enumerate(self.basis)),
                Fraction(0),
            )
            if reduced > 0 and (upper is None or self.value[k] < upper):
                return k, 1
            if reduced < 0 and self.value[k] > self.lower[k]:
                return k, -1
        return None

    def _step(self, entering: int, direction: int) -> None:
        # Candidates are (step length, variable index, tableau row or None).
        candidates: list[tuple[Fraction, int, Optional[int]]] = []
        upper = self.upper[entering]
        if upper is not None:
            candidates.append((upper - self.lower[entering], entering, None))
        for i, b in enumerate(self.basis):
            rate = -self.table[i][entering] * direction
            if rate < 0:
                candidates.append(((self.value[b] - self.lower[b]) / -rate, b, i))
            elif rate > 0 and self.upper[b] is not None:
                candidates.append(((self.upper[b] - self.value[b]) / rate, b, i))
        if not candidates:
            raise LpSolverError(f"Column {entering} is unbounded inside a finite box")
        step, _, pivot_row = min(candidates, key=lambda c: (c[0], c[1]))

        for i, b in enumerate(self.basis):
            self.value[b] -= self.table[i][entering] * direction * step
        self.value[entering] += direction * step
        if pivot_row is None:
            return

        leaving = self.basis[pivot_row]
        # Snap the leaving variable exactly onto the bound it reached.
        if -self.table[pivot_row][entering] * direction < 0:
            self.value[leaving] = self.lower[leaving]
        else:
            upper_leaving = self.upper[leaving]
            assert upper_leaving is not None
            self.value[leaving] = upper_leaving
        self._pivot(pivot_row, entering)

    def _pivot(self, pivot_row: int, entering: int) -> None:
        line = self.table[pivot_row]
        pivot = line[entering]
        line = [c / pivot for c in line]
        self.table[pivot_row] = line
        for i, other in enumerate(self.table):
            if i == pivot_row or other[entering] == 0:
                continue
            factor = other[entering]
            self.table[i] = [c - factor * p for c, p in zip(other, line)]
        self.basis[pivot_row] = entering


class ExactLpSolver:
    """Exact LP oracle over rationals for problems inside a finite box."""

    def __init__(
        self,
        logger: logging.Logger | None = None,
        iteration_limit: int = DEFAULT_ITERATION_LIMIT,
    ) -> None:
        """Initialise the solver.

        :param logger: Logger object to use (optional)
        :param iteration_limit: pivot budget per phase; breaching it is a bug.
        """
        self._logger = logger or _module_logger
        self.iteration_limit = iteration_limit
        self.solves: int = 0

    def maximize(self, problem: LpProblem) -> LpOutcome:
        """Maximise the objective over the relaxation.

        :param problem: the LP problem.
        :return: the optimum with a witness, or INFEASIBLE.
        :raises: LpSolverError if the iteration limit is breached.
        """
        self.solves += 1
        tableau = _Tableau(problem)
        if tableau.artificials:
            phase_one = [Fraction(0)] * tableau.width
            for r in tableau.artificials:
                phase_one[r] = Fraction(-1)
            tableau.run(phase_one, self.iteration_limit)
            if any(tableau.value[r] > 0 for r in tableau.artificials):
                self._logger.debug("LP relaxation is infeasible")
                return LpOutcome(LpStatus.INFEASIBLE)
            for r in tableau.artificials:
                tableau.upper[r] = Fraction(0)

        cost = [Fraction(0)] * tableau.width
        for k, j in enumerate(tableau.variables):
            cost[k] = problem.objective.get(j, Fraction(0))
        tableau.run(cost, self.iteration_limit)

        witness = {j: tableau.value[k] for k, j in enumerate(tableau.variables)}
        value = sum(
            (c * witness[j] for j, c in problem.objective.items()), Fraction(0)
        )
        return LpOutcome(LpStatus.OPTIMAL, value, witness)

    def minimize(self, problem: LpProblem) -> LpOutcome:
        """Minimise the objective by maximising its negation.

        :param problem: the LP problem.
        :return: the optimum with a witness, or INFEASIBLE.
        """
        negated = LpProblem(
            {j: -c for j, c in problem.objective.items()},
            problem.rows,
            problem.lower,
            problem.upper,
        )
        outcome = self.maximize(negated)
        if outcome.status is LpStatus.INFEASIBLE or outcome.value is None:
            return outcome
        return LpOutcome(LpStatus.OPTIMAL, -outcome.value, outcome.witness)


_default_solver = ExactLpSolver()


def maximize(problem: LpProblem) -> LpOutcome:
    """Maximise with the module's default solver."""
    return _default_solver.maximize(problem)


def minimize(problem: LpProblem) -> LpOutcome:
    """Minimise with the module's default solver."""
    return _default_solver.minimize(problem)
