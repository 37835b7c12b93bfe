# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides a counter configuration utility."""

from typing import Final, Optional, TypedDict

import yaml
from cerberus import Validator  # type: ignore[import-untyped]

TECHNIQUE_NAMES: Final = (
    "remove_variables",
    "strengthen_bounds",
    "strengthen_coefficients",
    "remove_individual_rows",
    "remove_individual_rows_lp",
    "remove_parallel_rows",
    "remove_subset_rows",
)

SIMPLIFY_SCHEMA: Final = {
    "type": "dict",
    "default": {},
    "schema": {
        **{name: {"type": "boolean", "default": True} for name in TECHNIQUE_NAMES},
        "fixpoint_iteration_cap": {
            "type": "integer",
            "min": 1,
            "default": 100,
        },
    },
}

CACHE_SCHEMA: Final = {
    "type": "dict",
    "default": {},
    "schema": {
        "enabled": {"type": "boolean", "default": True},
        "capacity_mb": {
            "type": "integer",
            "min": 1,
            "default": 10240,
        },
        "verify_hit_interval": {
            "type": "integer",
            "min": 0,
            "default": 0,
        },
        "probe": {
            "type": "string",
            "allowed": ["after_simplify", "before_simplify"],
            "default": "after_simplify",
        },
    },
}

COUNTER_SCHEMA: Final = {
    "Counter": {
        "type": "dict",
        "required": True,
        "schema": {
            "name": {"type": "string"},
            "cache": CACHE_SCHEMA,
            "lp_per_node": {"type": "boolean", "default": False},
            "selection": {
                "type": "string",
                "allowed": ["betweenness", "degree", "first"],
                "default": "betweenness",
            },
            "time_limit": {
                "type": "number",
                "min": 0,
                "nullable": True,
                "default": None,
            },
            "memory_limit_mb": {
                "type": "integer",
                "min": 1,
                "nullable": True,
                "default": None,
            },
            "simplify": SIMPLIFY_SCHEMA,
        },
    }
}


class SimplifyDict(TypedDict):
    """Typed Dict for the simplification settings.

    One boolean per technique, plus
    fixpoint_iteration_cap (int)
    """

    remove_variables: bool
    strengthen_bounds: bool
    strengthen_coefficients: bool
    remove_individual_rows: bool
    remove_individual_rows_lp: bool
    remove_parallel_rows: bool
    remove_subset_rows: bool
    fixpoint_iteration_cap: int


class CacheDict(TypedDict):
    """Typed Dict for the component cache settings.

    enabled (bool)
    capacity_mb (int)
    verify_hit_interval (int): recompute every n-th hit, 0 disables
    probe (str): after_simplify or before_simplify
    """

    enabled: bool
    capacity_mb: int
    verify_hit_interval: int
    probe: str


class CounterConfigDict(TypedDict, total=False):
    """TypedDict for a counter configuration.

    name (str): Name of the configuration (optional key)
    cache (CacheDict): Component cache settings
    lp_per_node (bool): Run the LP row removal at every search node
    selection (str): Branching heuristic
    time_limit (float | None): Seconds before the search gives up
    memory_limit_mb (int | None): Memory budget of the search
    simplify (SimplifyDict): Simplification settings
    """

    name: str
    cache: CacheDict
    lp_per_node: bool
    selection: str
    time_limit: Optional[float]
    memory_limit_mb: Optional[int]
    simplify: SimplifyDict


def validate_configuration(config: dict) -> CounterConfigDict:
    """
    Validate a configuration dictionary and apply defaults.

    :param config: dictionary with a top-level ``Counter`` key.
    :returns: validated configuration dictionary.
    :raises: ValueError if the configuration is invalid.
    """
    v = Validator(COUNTER_SCHEMA)
    if v.validate(config):
        return v.normalized(config)["Counter"]
    raise ValueError(f"Counter configuration is invalid: {v.errors}")


def default_configuration() -> CounterConfigDict:
    """Return the configuration with every default applied."""
    return validate_configuration({"Counter": {}})


def load_configuration(config_path: str) -> CounterConfigDict:
    """
    Load and validate the configuration YAML file.

    :param config_path: path to the configuration file.
    :returns: validated configuration dictionary.
    :raises: OSError if the file cannot be opened.
    :raises: UnicodeDecodeError if the file cannot be decoded.
    :raises: YAMLError if the YAML cannot be loaded.
    :raises: ValueError if the configuration is invalid.
    """
    with open(config_path, "r", encoding="UTF-8") as file:
        config = yaml.safe_load(file)

    # Validate the data and apply defaults if needed
    if not isinstance(config, dict):
        raise ValueError(f"Counter configuration is invalid: {config_path} is empty")
    return validate_configuration(config)
