# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This package implements exact model counting for integer linear constraints."""

__all__ = ["cli", "core", "counter", "graph", "io_gen", "lp", "oracle", "simplify"]

__version__ = "0.1.0"
