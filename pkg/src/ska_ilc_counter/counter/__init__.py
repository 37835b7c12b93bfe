# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This subpackage implements the model counter and its component cache."""

__all__ = [
    "CacheKey",
    "CacheVerificationError",
    "ComponentCache",
    "CountResult",
    "CounterConfig",
    "CounterConfigDict",
    "CounterStats",
    "Deadline",
    "MemoryLimitExceeded",
    "ModelCounter",
    "ProbeMode",
    "ResourceLimitError",
    "TimeLimitExceeded",
    "cache_key",
    "cache_probe",
    "cache_store",
    "count",
    "default_configuration",
    "load_configuration",
    "validate_configuration",
]

from .component_cache import (
    CacheKey,
    ComponentCache,
    cache_key,
    cache_probe,
    cache_store,
)
from .counter_configuration import (
    CounterConfigDict,
    default_configuration,
    load_configuration,
    validate_configuration,
)
from .model_counter import (
    CacheVerificationError,
    CounterConfig,
    CounterStats,
    CountResult,
    Deadline,
    MemoryLimitExceeded,
    ModelCounter,
    ProbeMode,
    ResourceLimitError,
    TimeLimitExceeded,
    count,
)
