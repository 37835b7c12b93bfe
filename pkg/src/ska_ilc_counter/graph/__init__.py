# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the primal graph and variable selection."""

__all__ = [
    "Component",
    "Partition",
    "PrimalGraph",
    "SelectionMode",
    "betweenness_scores",
    "build_primal_graph",
    "decompose",
    "select_variable",
]

from .primal_graph import (
    Component,
    Partition,
    PrimalGraph,
    SelectionMode,
    betweenness_scores,
    build_primal_graph,
    decompose,
    select_variable,
)
