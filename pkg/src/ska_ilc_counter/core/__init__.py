# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the domain types for integer linear constraints."""

__all__ = [
    "Activity",
    "Row",
    "System",
    "SystemStatus",
    "assign",
    "inf_activity",
    "make_inconsistent",
    "restrict",
    "row_inf",
    "row_sup",
    "settle_trivial_rows",
    "sup_activity",
    "valid_count",
]

from .system import (
    Activity,
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
