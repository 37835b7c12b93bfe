# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the instance format and the instance generator."""

__all__ = [
    "DOMAIN_PRESETS",
    "GENERATOR_NAME",
    "GenParams",
    "InstanceParseError",
    "derive_seed",
    "generate",
    "parameter_grid",
    "parse",
    "read_instance",
    "render",
    "write_instance",
]

from .generator import (
    DOMAIN_PRESETS,
    GENERATOR_NAME,
    GenParams,
    derive_seed,
    generate,
    parameter_grid,
)
from .instance_format import (
    InstanceParseError,
    parse,
    read_instance,
    render,
    write_instance,
)
