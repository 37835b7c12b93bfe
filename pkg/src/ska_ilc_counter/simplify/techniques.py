# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the count-preserving simplification techniques.

Every technique takes a System and returns a new one; the input is never
modified. A technique that proves the system has no solution returns
:func:`~ska_ilc_counter.core.make_inconsistent`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Optional, Protocol

from ska_ilc_counter.core import (
    Row,
    System,
    SystemStatus,
    assign,
    inf_activity,
    make_inconsistent,
    row_inf,
    row_sup,
    sup_activity,
)
from ska_ilc_counter.lp import LpOutcome, LpProblem, LpStatus

_module_logger = logging.getLogger(__name__)


class Technique(Enum):
    """Enumeration type for the simplification techniques."""

    REMOVE_VARIABLES = "remove_variables"
    STRENGTHEN_BOUNDS = "strengthen_bounds"
    STRENGTHEN_COEFFICIENTS = "strengthen_coefficients"
    REMOVE_INDIVIDUAL_ROWS = "remove_individual_rows"
    REMOVE_INDIVIDUAL_ROWS_LP = "remove_individual_rows_lp"
    REMOVE_PARALLEL_ROWS = "remove_parallel_rows"
    REMOVE_SUBSET_ROWS = "remove_subset_rows"


class LpSolver(Protocol):
    """Anything that can optimise an :class:`LpProblem` exactly."""

    def maximize(self, problem: LpProblem) -> LpOutcome:
        """Return the maximum of the objective."""

    def minimize(self, problem: LpProblem) -> LpOutcome:
        """Return the minimum of the objective."""


@dataclass
class SimplifyLog:
    """Counters and an ordered trace of the transformations applied."""

    rows_removed: dict[Technique, int] = field(
        default_factory=lambda: {technique: 0 for technique in Technique}
    )
    bounds_tightened: int = 0
    coefficients_strengthened: int = 0
    variables_removed: int = 0
    transformations: list[str] = field(default_factory=list)
    keep_transformations: bool = True

    @property
    def rows_removed_total(self) -> int:
        """Rows removed by all techniques together."""
        return sum(self.rows_removed.values())

    def record(self, technique: Technique, message: str) -> None:
        """Append a transformation to the trace."""
        if self.keep_transformations:
            self.transformations.append(f"{technique.value}: {message}")

    def merge(self, other: SimplifyLog) -> None:
        """Add another log's counters into this one (the trace is not copied)."""
        for technique, removed in other.rows_removed.items():
            self.rows_removed[technique] += removed
        self.bounds_tightened += other.bounds_tightened
        self.coefficients_strengthened += other.coefficients_strengthened
        self.variables_removed += other.variables_removed

    def as_dict(self) -> dict[str, int]:
        """Flatten the counters for statistics output."""
        flat = {
            f"rows_removed_{technique.value}": removed
            for technique, removed in self.rows_removed.items()
        }
        flat["rows_removed_total"] = self.rows_removed_total
        flat["bounds_tightened"] = self.bounds_tightened
        flat["coefficients_strengthened"] = self.coefficients_strengthened
        flat["variables_removed"] = self.variables_removed
        return flat


@dataclass(frozen=True)
class NormalizedRowKey:
    """Coefficients of a row divided by the gcd of their absolute values."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, row: Row) -> tuple[NormalizedRowKey, int]:
        """Normalise a row.

        :param row: a row with a nonempty support.
        :return: the key and the positive gcd used.
        """
        divisor = reduce(math.gcd, (abs(a) for _, a in row.terms))
        return cls(tuple((j, a // divisor) for j, a in row.terms)), divisor

    def negated(self) -> NormalizedRowKey:
        """Return the key of the opposite direction."""
        return NormalizedRowKey(tuple((j, -a) for j, a in self.terms))


def _log(log: Optional[SimplifyLog]) -> SimplifyLog:
    return log if log is not None else SimplifyLog(keep_transformations=False)


def _ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)


def remove_variables(system: System, log: Optional[SimplifyLog] = None) -> System:
    """Substitute out every variable whose bounds coincide.

    :param system: the system.
    :param log: optional log to record into.
    :return: the system without fixed variables.
    """
    if system.status is SystemStatus.INCONSISTENT:
        return system
    log = _log(log)
    for j in sorted(system.variables):
        if system.lower[j] == system.upper[j]:
            value = system.upper[j]
            system = assign(system, j, value)
            log.variables_removed += 1
            log.record(Technique.REMOVE_VARIABLES, f"x{j} = {value}")
    return system


def strengthen_bounds(system: System, log: Optional[SimplifyLog] = None) -> System:
    """Tighten variable bounds from each row's minimal activity (one sweep).

    :param system: the system.
    :param log: optional log to record into.
    :return: the system with tighter bounds, or the inconsistent system.
    """
    if system.status is not SystemStatus.OPEN:
        return system
    log = _log(log)
    lower = dict(system.lower)
    upper = dict(system.upper)
    current = system
    for i in sorted(system.rows):
        row = system.rows[i]
        minimal = row_inf(current, row)
        for j, a in row.terms:
            # inf(A_{iN_{-j}}) from the full-row activity computed above
            rest = minimal - (a * current.lower[j] if a > 0 else a * current.upper[j])
            slack = row.rhs - rest
            if a > 0:
                bound = slack // a
                if bound < upper[j]:
                    log.record(
                        Technique.STRENGTHEN_BOUNDS,
                        f"row {i}: u{j} {upper[j]} -> {bound}",
                    )
                    upper[j] = bound
                    log.bounds_tightened += 1
            else:
                bound = _ceil_div(slack, a)
                if bound > lower[j]:
                    log.record(
                        Technique.STRENGTHEN_BOUNDS,
                        f"row {i}: l{j} {lower[j]} -> {bound}",
                    )
                    lower[j] = bound
                    log.bounds_tightened += 1
            if lower[j] > upper[j]:
                log.record(Technique.STRENGTHEN_BOUNDS, f"x{j} has an empty domain")
                return make_inconsistent()
        current = current.with_bounds(dict(lower), dict(upper))
    return current


def strengthen_coefficients(
    system: System, log: Optional[SimplifyLog] = None
) -> System:
    """Reduce coefficient magnitudes without changing the solution set.

    :param system: the system (fixed variables are left alone).
    :param log: optional log to record into.
    :return: the system with strengthened rows.
    """
    if system.status is not SystemStatus.OPEN:
        return system
    log = _log(log)
    rows = dict(system.rows)
    for i in sorted(rows):
        row = rows[i]
        for j in row.support:
            a = row.coefficient(j)
            if a == 0 or system.lower[j] == system.upper[j]:
                continue
            rest = row_sup(system, row) - (
                a * system.upper[j] if a > 0 else a * system.lower[j]
            )
            if a > 0:
                d = row.rhs - rest - a * (system.upper[j] - 1)
                if not a >= d > 0:
                    continue
                terms = {k: c for k, c in row.terms}
                terms[j] = a - d
                row = Row.from_terms(terms, row.rhs - d * system.upper[j])
            else:
                d = row.rhs - rest - a * (system.lower[j] + 1)
                if not -a >= d > 0:
                    continue
                terms = {k: c for k, c in row.terms}
                terms[j] = a + d
                row = Row.from_terms(terms, row.rhs + d * system.lower[j])
            log.coefficients_strengthened += 1
            log.record(
                Technique.STRENGTHEN_COEFFICIENTS,
                f"row {i}: a{j} {a} -> {row.coefficient(j)}, rhs -> {row.rhs}",
            )
            # Redundant now; row removal takes it from here.
            if row_sup(system, row) <= row.rhs:
                break
        rows[i] = row
    return system.with_rows(rows)


def remove_individual_rows(system: System, log: Optional[SimplifyLog] = None) -> System:
    """Drop rows implied by the box and detect rows the box cannot satisfy.

    :param system: the system.
    :param log: optional log to record into.
    :return: the reduced system, or the inconsistent system.
    """
    if system.status is not SystemStatus.OPEN:
        return system
    log = _log(log)
    rows: dict[int, Row] = {}
    for i in sorted(system.rows):
        if inf_activity(system, i) > system.rows[i].rhs:
            log.record(Technique.REMOVE_INDIVIDUAL_ROWS, f"row {i} is unsatisfiable")
            return make_inconsistent()
        if sup_activity(system, i) <= system.rows[i].rhs:
            log.rows_removed[Technique.REMOVE_INDIVIDUAL_ROWS] += 1
            log.record(Technique.REMOVE_INDIVIDUAL_ROWS, f"row {i} removed")
            continue
        rows[i] = system.rows[i]
    return system.with_rows(rows)


def remove_individual_rows_lp(
    system: System, lp: LpSolver, log: Optional[SimplifyLog] = None
) -> System:
    """Drop rows implied by the LP relaxation of the remaining rows.

    :param system: the system.
    :param lp: the LP solver.
    :param log: optional log to record into.
    :return: the reduced system, or the inconsistent system.
    :raises: LpSolverError if the LP solver fails.
    """
    if system.status is not SystemStatus.OPEN:
        return system
    log = _log(log)
    current = system
    for i in sorted(system.rows):
        row = current.rows[i]
        objective = dict(row.terms)
        maximum = lp.maximize(LpProblem.from_system(current, objective, exclude_row=i))
        if maximum.status is LpStatus.INFEASIBLE or maximum.value is None:
            log.record(
                Technique.REMOVE_INDIVIDUAL_ROWS_LP,
                f"relaxation without row {i} is infeasible",
            )
            return make_inconsistent()
        if maximum.value <= row.rhs:
            log.rows_removed[Technique.REMOVE_INDIVIDUAL_ROWS_LP] += 1
            log.record(Technique.REMOVE_INDIVIDUAL_ROWS_LP, f"row {i} removed")
            current = current.with_rows(
                {k: r for k, r in current.rows.items() if k != i}
            )
            continue
        minimum = lp.minimize(LpProblem.from_system(current, objective, exclude_row=i))
        if minimum.value is not None and minimum.value > row.rhs:
            log.record(
                Technique.REMOVE_INDIVIDUAL_ROWS_LP, f"row {i} is unsatisfiable"
            )
            return make_inconsistent()
    return current


def remove_parallel_rows(system: System, log: Optional[SimplifyLog] = None) -> System:
    """Keep only the tightest of positively parallel rows.

    Negatively parallel rows that cannot hold together make the system
    inconsistent; compatible ones are both kept.

    :param system: the system.
    :param log: optional log to record into.
    :return: the reduced system, or the inconsistent system.
    """
    if system.status is not SystemStatus.OPEN:
        return system
    log = _log(log)
    survivors: dict[NormalizedRowKey, tuple[int, int]] = {}
    removed: set[int] = set()
    for i in sorted(system.rows):
        row = system.rows[i]
        if not row.terms:
            continue
        key, g_i = NormalizedRowKey.of(row)

        opposite = survivors.get(key.negated())
        if opposite is not None:
            k, g_k = opposite
            if row.rhs * g_k < -system.rows[k].rhs * g_i:
                log.record(
                    Technique.REMOVE_PARALLEL_ROWS,
                    f"rows {k} and {i} are opposite and conflict",
                )
                return make_inconsistent()

        same = survivors.get(key)
        if same is None:
            survivors[key] = (i, g_i)
            continue
        k, g_k = same
        if row.rhs * g_k < system.rows[k].rhs * g_i:
            removed.add(k)
            survivors[key] = (i, g_i)
            log.record(Technique.REMOVE_PARALLEL_ROWS, f"row {k} removed (by {i})")
        else:
            removed.add(i)
            log.record(Technique.REMOVE_PARALLEL_ROWS, f"row {i} removed (by {k})")
        log.rows_removed[Technique.REMOVE_PARALLEL_ROWS] += 1
    if not removed:
        return system
    return system.with_rows(
        {i: row for i, row in system.rows.items() if i not in removed}
    )


def _is_subset(row: Row, of: Row) -> bool:
    """Check ``row`` agrees with ``of`` on its own support, which is smaller."""
    if not row.terms or len(row.terms) >= len(of.terms):
        return False
    wider = dict(of.terms)
    return all(wider.get(j) == a for j, a in row.terms)


def remove_subset_rows(system: System, log: Optional[SimplifyLog] = None) -> System:
    """Remove rows dominated through a subset relationship.

    :param system: the system.
    :param log: optional log to record into.
    :return: the reduced system.
    """
    if system.status is not SystemStatus.OPEN:
        return system
    log = _log(log)
    removed: set[int] = set()
    ids = sorted(system.rows)
    for k in ids:
        for i in ids:
            if k in removed:
                break
            if i == k or i in removed:
                continue
            small, wide = system.rows[i], system.rows[k]
            if not _is_subset(small, wide):
                continue
            extra = set(wide.support) - set(small.support)
            gap = wide.rhs - small.rhs
            if row_inf(system, wide, extra) >= gap:
                removed.add(i)
                log.record(Technique.REMOVE_SUBSET_ROWS, f"row {i} removed (by {k})")
            elif row_sup(system, wide, extra) <= gap:
                removed.add(k)
                log.record(Technique.REMOVE_SUBSET_ROWS, f"row {k} removed (by {i})")
            else:
                continue
            log.rows_removed[Technique.REMOVE_SUBSET_ROWS] += 1
    if not removed:
        return system
    return system.with_rows(
        {i: row for i, row in system.rows.items() if i not in removed}
    )
