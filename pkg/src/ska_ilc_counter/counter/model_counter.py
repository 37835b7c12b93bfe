# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module implements the exhaustive DPLL model counter.

Each search node probes the component cache, simplifies the system, and then
either multiplies the counts of independent components or sums the counts of
every value of a branching variable.
"""

from __future__ import annotations

import dataclasses
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Final, Optional

from ska_ilc_counter.core import (
    System,
    SystemStatus,
    assign,
    restrict,
    settle_trivial_rows,
    valid_count,
)
from ska_ilc_counter.graph import SelectionMode, decompose, select_variable
from ska_ilc_counter.lp import ExactLpSolver
from ska_ilc_counter.simplify import SimplifyConfig, SimplifyLog, Technique, simplify

from .component_cache import CacheKey, ComponentCache, cache_key
from .counter_configuration import CounterConfigDict

_module_logger = logging.getLogger(__name__)

MEGABYTE: Final = 1024 * 1024
DEFAULT_CACHE_CAPACITY_BYTES: Final = 10240 * MEGABYTE

# Rough per-object cost used to estimate the systems on the search path.
_TERM_BYTES: Final = 64


class ProbeMode(Enum):
    """Enumeration type for the point where the cache is consulted."""

    AFTER_SIMPLIFY = "after_simplify"
    BEFORE_SIMPLIFY = "before_simplify"


@dataclass(frozen=True)
class CounterConfig:  # pylint: disable=too-many-instance-attributes
    """Settings of one counting run."""

    simplify: SimplifyConfig = field(default_factory=SimplifyConfig)
    cache_enabled: bool = True
    cache_capacity_bytes: int = DEFAULT_CACHE_CAPACITY_BYTES
    lp_per_node: bool = False
    selection: SelectionMode = SelectionMode.BETWEENNESS
    probe: ProbeMode = ProbeMode.AFTER_SIMPLIFY
    verify_hit_interval: int = 0
    time_limit: Optional[float] = None
    memory_limit_bytes: Optional[int] = None
    name: str = "default"

    def __post_init__(self) -> None:
        """Check the settings.

        :raises: ValueError if a setting is out of range.
        """
        if self.cache_enabled and self.cache_capacity_bytes <= 0:
            raise ValueError(
                f"Cache capacity must be positive, got {self.cache_capacity_bytes}"
            )
        if self.verify_hit_interval < 0:
            raise ValueError(
                f"verify_hit_interval must be >= 0, got {self.verify_hit_interval}"
            )
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError(f"time_limit must be >= 0, got {self.time_limit}")
        if self.memory_limit_bytes is not None and self.memory_limit_bytes <= 0:
            raise ValueError(
                f"memory_limit_bytes must be positive, got {self.memory_limit_bytes}"
            )

    @classmethod
    def from_dict(
        cls, config: CounterConfigDict, name: Optional[str] = None
    ) -> CounterConfig:
        """Build a configuration from a validated configuration dictionary.

        :param config: output of the configuration loader.
        :param name: name to give the configuration; defaults to the
            ``name`` key, then ``"default"``.
        :return: the configuration.
        """
        cache = config["cache"]
        memory_limit_mb = config["memory_limit_mb"]
        return cls(
            simplify=SimplifyConfig(**config["simplify"]),
            cache_enabled=cache["enabled"],
            cache_capacity_bytes=cache["capacity_mb"] * MEGABYTE,
            lp_per_node=config["lp_per_node"],
            selection=SelectionMode(config["selection"]),
            probe=ProbeMode(cache["probe"]),
            verify_hit_interval=cache["verify_hit_interval"],
            time_limit=config["time_limit"],
            memory_limit_bytes=(
                None if memory_limit_mb is None else memory_limit_mb * MEGABYTE
            ),
            name=name or config.get("name", "default"),
        )

    def replace(self, **changes: Any) -> CounterConfig:
        """Return a copy with some settings changed."""
        return dataclasses.replace(self, **changes)

    @property
    def fingerprint(self) -> str:
        """Short description of the settings that affect the search."""
        disabled = [t.value for t in Technique if not self.simplify.enabled(t)]
        parts = [
            f"select={self.selection.value}",
            f"cache={'on' if self.cache_enabled else 'off'}",
            f"lp_per_node={'on' if self.lp_per_node else 'off'}",
            f"disabled={'+'.join(disabled) if disabled else 'none'}",
        ]
        if self.probe is ProbeMode.BEFORE_SIMPLIFY:
            parts.append("probe=before_simplify")
        return f"{self.name}[{';'.join(parts)}]"


@dataclass
class CounterStats:  # pylint: disable=too-many-instance-attributes
    """Statistics gathered during one counting run."""

    nodes: int = 0
    cache_hits: int = 0
    cache_entries: int = 0
    cache_evictions: int = 0
    decompositions: int = 0
    branchings: int = 0
    lp_solves: int = 0
    simplify: SimplifyLog = field(
        default_factory=lambda: SimplifyLog(keep_transformations=False)
    )
    wall_time: float = 0.0

    def as_dict(self) -> dict[str, Any]:
        """Flatten the statistics for output."""
        stats: dict[str, Any] = {
            "nodes": self.nodes,
            "cache_hits": self.cache_hits,
            "cache_entries": self.cache_entries,
            "cache_evictions": self.cache_evictions,
            "decompositions": self.decompositions,
            "branchings": self.branchings,
            "lp_solves": self.lp_solves,
        }
        stats.update(self.simplify.as_dict())
        stats["wall_time"] = round(self.wall_time, 6)
        return stats


@dataclass(frozen=True)
class CountResult:
    """The exact count and the statistics of the run that produced it."""

    count: int
    stats: CounterStats


class ResourceLimitError(RuntimeError):
    """Raised when the search runs out of time or memory."""

    def __init__(self, message: str, stats: CounterStats) -> None:
        """Initialise the error.

        :param message: description of the breach.
        :param stats: statistics gathered up to the breach.
        """
        super().__init__(message)
        self.stats = stats


class TimeLimitExceeded(ResourceLimitError):
    """Raised when the time limit passes during the search."""


class MemoryLimitExceeded(ResourceLimitError):
    """Raised when the estimated memory use breaches the limit."""


class CacheVerificationError(AssertionError):
    """Raised when a cached count differs from its recomputation."""


class Deadline:
    """Point in monotonic time after which the search stops."""

    def __init__(self, seconds: Optional[float]) -> None:
        """Start the clock.

        :param seconds: time allowed, or None for no limit.
        """
        self._expires = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        """Return whether the deadline has passed."""
        return self._expires is not None and time.monotonic() >= self._expires


def _footprint(system: System) -> int:
    terms = sum(len(row.terms) + 1 for row in system.rows.values())
    return _TERM_BYTES * (terms + len(system.variables))


class ModelCounter:  # pylint: disable=too-many-instance-attributes
    """Count the integer solutions of a system exactly."""

    def __init__(
        self,
        config: Optional[CounterConfig] = None,
        logger: logging.Logger | None = None,
        lp_solver: Optional[ExactLpSolver] = None,
    ) -> None:
        """Initialise a new ModelCounter.

        :param config: counting settings, defaults apply if omitted.
        :param logger: Logger object to use (optional)
        :param lp_solver: LP solver for the LP-based row removal (optional)
        """
        self.config = config or CounterConfig()
        self._logger = logger or _module_logger
        self._lp = lp_solver or ExactLpSolver(logger=self._logger)
        self._root_simplify = self.config.simplify
        self._node_simplify = (
            self.config.simplify
            if self.config.lp_per_node
            else self.config.simplify.without(Technique.REMOVE_INDIVIDUAL_ROWS_LP)
        )
        self._stats = CounterStats()
        self._cache: Optional[ComponentCache] = None
        self._deadline = Deadline(None)
        self._path_bytes = 0
        self._verified_hits = 0

    def _cache_capacity(self) -> int:
        capacity = self.config.cache_capacity_bytes
        if self.config.memory_limit_bytes is not None:
            capacity = min(capacity, max(1, self.config.memory_limit_bytes // 2))
        return capacity

    def count(self, system: System) -> CountResult:
        """Count the solutions of a system.

        :param system: a well-formed system.
        :return: the exact count with statistics.
        :raises: TimeLimitExceeded if the time limit passes.
        :raises: MemoryLimitExceeded if the memory limit is breached.
        :raises: LpSolverError if the LP solver fails.
        """
        system.validate()
        self._stats = CounterStats()
        self._cache = (
            ComponentCache(self._cache_capacity(), logger=self._logger)
            if self.config.cache_enabled
            else None
        )
        self._deadline = Deadline(self.config.time_limit)
        self._path_bytes = 0
        self._verified_hits = 0
        solves_before = self._lp.solves

        self._logger.info(
            f"Counting a system with {len(system.variables)} variables and "
            f"{len(system.rows)} rows using {self.config.fingerprint}"
        )
        start = time.perf_counter()
        try:
            total = self._count(system, root=True)
        except ResourceLimitError as e:
            self._logger.warning(f"Search stopped: {e}")
            raise
        finally:
            self._stats.wall_time = time.perf_counter() - start
            self._stats.lp_solves = self._lp.solves - solves_before
            if self._cache is not None:
                self._stats.cache_entries = len(self._cache)
                self._stats.cache_evictions = self._cache.evictions

        self._logger.info(
            f"Counted {total} solutions in {self._stats.wall_time:.3f} s "
            f"({self._stats.nodes} nodes, {self._stats.cache_hits} cache hits)"
        )
        return CountResult(total, self._stats)

    def _check_limits(self) -> None:
        if self._deadline.expired():
            raise TimeLimitExceeded(
                f"Time limit of {self.config.time_limit} s exceeded", self._stats
            )
        limit = self.config.memory_limit_bytes
        if limit is None:
            return
        used = self._path_bytes + (self._cache.bytes_used if self._cache else 0)
        if used > limit:
            raise MemoryLimitExceeded(
                f"Estimated memory use of {used} bytes exceeds {limit} bytes",
                self._stats,
            )

    def _probe(self, key: CacheKey, system: System) -> Optional[int]:
        if self._cache is None:
            return None
        hit = self._cache.probe_key(key)
        if hit is None:
            return None
        self._stats.cache_hits += 1
        interval = self.config.verify_hit_interval
        if interval:
            self._verified_hits += 1
            if self._verified_hits % interval == 0:
                self._verify_hit(system, hit)
        return hit

    def _verify_hit(self, system: System, hit: int) -> None:
        checker = ModelCounter(
            self.config.replace(
                cache_enabled=False,
                verify_hit_interval=0,
                time_limit=None,
                memory_limit_bytes=None,
            ),
            logger=self._logger,
            lp_solver=self._lp,
        )
        recomputed = checker.count(system).count
        if recomputed != hit:
            raise CacheVerificationError(
                f"Cache returned {hit} for a component that counts to {recomputed}"
            )

    def _count(self, system: System, root: bool = False) -> int:
        self._check_limits()
        self._stats.nodes += 1

        key: Optional[CacheKey] = None
        if self._cache is not None and self.config.probe is ProbeMode.BEFORE_SIMPLIFY:
            key = cache_key(system)
            hit = self._probe(key, system)
            if hit is not None:
                return hit

        simplified, _ = simplify(
            system,
            self._root_simplify if root else self._node_simplify,
            self._lp,
            self._stats.simplify,
        )
        simplified = settle_trivial_rows(simplified)
        status = simplified.status
        if status is SystemStatus.INCONSISTENT:
            return 0
        if status is SystemStatus.VALID:
            return valid_count(simplified)

        if self._cache is not None and key is None:
            key = cache_key(simplified)
            hit = self._probe(key, simplified)
            if hit is not None:
                return hit

        footprint = _footprint(simplified)
        self._path_bytes += footprint
        try:
            total = self._search(simplified)
        finally:
            self._path_bytes -= footprint

        if self._cache is not None and key is not None:
            self._cache.store_key(key, total)
        return total

    def _search(self, system: System) -> int:
        partition = decompose(system)
        if len(partition) > 1:
            self._stats.decompositions += 1
            self._logger.debug(f"Split into {len(partition)} components")
            total = 1
            for component in partition:
                if component.rows:
                    total *= self._count(
                        restrict(system, component.variables, component.rows)
                    )
                else:
                    for j in component.variables:
                        total *= system.domain_size(j)
                if total == 0:
                    break
            return total

        self._stats.branchings += 1
        variable = select_variable(system, self.config.selection)
        return sum(
            self._count(assign(system, variable, value))
            for value in range(system.lower[variable], system.upper[variable] + 1)
        )


def count(system: System, config: Optional[CounterConfig] = None) -> CountResult:
    """Count the solutions of a system with a fresh counter.

    :param system: a well-formed system.
    :param config: counting settings (optional)
    :return: the exact count with statistics.
    """
    return ModelCounter(config).count(system)
