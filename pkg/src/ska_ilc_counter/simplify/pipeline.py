# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module orchestrates the simplification techniques."""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields
from typing import Optional

from ska_ilc_counter.core import System, SystemStatus

from .techniques import (
    LpSolver,
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

_module_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplifyConfig:  # pylint: disable=too-many-instance-attributes
    """Enable flags for each technique and the fixpoint iteration cap."""

    remove_variables: bool = True
    strengthen_bounds: bool = True
    strengthen_coefficients: bool = True
    remove_individual_rows: bool = True
    remove_individual_rows_lp: bool = True
    remove_parallel_rows: bool = True
    remove_subset_rows: bool = True
    fixpoint_iteration_cap: int = 100

    def __post_init__(self) -> None:
        """Check the iteration cap."""
        if self.fixpoint_iteration_cap < 1:
            raise ValueError(
                "fixpoint_iteration_cap must be at least 1, "
                f"got {self.fixpoint_iteration_cap}"
            )

    def enabled(self, technique: Technique) -> bool:
        """Return whether a technique is switched on."""
        return bool(getattr(self, technique.value))

    def without(self, *techniques: Technique) -> SimplifyConfig:
        """Return a copy with the given techniques switched off."""
        flags = {f.name: getattr(self, f.name) for f in fields(self)}
        for technique in techniques:
            flags[technique.value] = False
        return SimplifyConfig(**flags)

    @classmethod
    def none_enabled(cls) -> SimplifyConfig:
        """Return a configuration with every technique switched off."""
        return cls().without(*Technique)


def simplify(
    system: System,
    config: SimplifyConfig,
    lp: LpSolver,
    log: Optional[SimplifyLog] = None,
) -> tuple[System, SimplifyLog]:
    """Simplify a system until the cheap techniques reach a fixpoint.

    Removing variables, strengthening bounds and removing individual rows are
    repeated until nothing changes (or the iteration cap is reached). The
    remaining techniques then run once, in order.

    :param system: the system.
    :param config: which techniques to run.
    :param lp: the LP solver for the LP-based row removal.
    :param log: optional log to accumulate into; a fresh one is created
        otherwise.
    :return: the simplified system and the log.
    :raises: LpSolverError if the LP solver fails.
    """
    if log is None:
        log = SimplifyLog()
    if system.status is SystemStatus.INCONSISTENT:
        return system, log

    for _ in range(config.fixpoint_iteration_cap):
        before = system
        if config.remove_variables:
            system = remove_variables(system, log)
        if config.strengthen_bounds:
            system = strengthen_bounds(system, log)
            if system.status is SystemStatus.INCONSISTENT:
                return system, log
        if config.remove_individual_rows:
            system = remove_individual_rows(system, log)
            if system.status is not SystemStatus.OPEN:
                return system, log
        if system.structurally_equal(before):
            break
    else:
        _module_logger.debug(
            f"Fixpoint loop stopped at the cap of {config.fixpoint_iteration_cap}"
        )

    if system.status is not SystemStatus.OPEN:
        return system, log
    if config.strengthen_coefficients:
        system = strengthen_coefficients(system, log)
    if config.remove_individual_rows_lp:
        system = remove_individual_rows_lp(system, lp, log)
        if system.status is not SystemStatus.OPEN:
            return system, log
    if config.remove_parallel_rows:
        system = remove_parallel_rows(system, log)
        if system.status is SystemStatus.INCONSISTENT:
            return system, log
    if config.remove_subset_rows:
        system = remove_subset_rows(system, log)
    return system, log
