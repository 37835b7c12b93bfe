# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the component cache used by the model counter."""

from __future__ import annotations

import logging
from collections import OrderedDict
from typing import Final, Optional, TypeAlias

from ska_ilc_counter.core import System

_module_logger = logging.getLogger(__name__)

CacheKey: TypeAlias = bytes

# Bookkeeping charged per entry on top of the key and value bytes.
ENTRY_OVERHEAD_BYTES: Final = 96


def _encode_int(value: int) -> bytes:
    magnitude = abs(value)
    body = magnitude.to_bytes(max(1, (magnitude.bit_length() + 7) // 8), "big")
    return bytes([1 if value < 0 else 0]) + len(body).to_bytes(4, "big") + body


def cache_key(system: System) -> CacheKey:
    """Encode a system canonically.

    The key lists the live variables by ascending id with their bounds,
    followed by the rows sorted by support, coefficients and rhs. Row ids
    and row order do not take part.

    :param system: the system.
    :return: the canonical byte string.
    """
    parts = [b"V", _encode_int(len(system.variables))]
    for j in sorted(system.variables):
        parts += [
            _encode_int(j),
            _encode_int(system.lower[j]),
            _encode_int(system.upper[j]),
        ]
    rows = sorted(
        (row.support, tuple(a for _, a in row.terms), row.rhs)
        for row in system.rows.values()
    )
    parts += [b"R", _encode_int(len(rows))]
    for support, coefficients, rhs in rows:
        parts.append(_encode_int(len(support)))
        parts += [_encode_int(j) for j in support]
        parts += [_encode_int(a) for a in coefficients]
        parts.append(_encode_int(rhs))
    return b"".join(parts)


def _entry_size(key: CacheKey, count: int) -> int:
    return len(key) + count.bit_length() // 8 + 1 + ENTRY_OVERHEAD_BYTES


class ComponentCache:
    """Byte-bounded map from canonical subsystems to their exact counts.

    Entries are evicted least recently used first once the byte budget is
    exceeded.
    """

    def __init__(
        self,
        capacity_bytes: int,
        logger: logging.Logger | None = None,
    ) -> None:
        """Initialise a new ComponentCache.

        :param capacity_bytes: byte budget, must be positive.
        :param logger: Logger object to use (optional)
        :raises: ValueError if the capacity is not positive.
        """
        if capacity_bytes <= 0:
            raise ValueError(f"Cache capacity must be positive, got {capacity_bytes}")
        self._logger = logger or _module_logger
        self.capacity_bytes = capacity_bytes
        self.bytes_used = 0
        self.hits = 0
        self.misses = 0
        self.evictions = 0
        self._entries: OrderedDict[CacheKey, int] = OrderedDict()

    def __len__(self) -> int:
        return len(self._entries)

    def probe_key(self, key: CacheKey) -> Optional[int]:
        """Look up a precomputed key."""
        count = self._entries.get(key)
        if count is None:
            self.misses += 1
            return None
        self.hits += 1
        self._entries.move_to_end(key)
        return count

    def store_key(self, key: CacheKey, count: int) -> None:
        """Insert a count under a precomputed key, evicting as needed."""
        if count < 0:
            raise ValueError(f"Cannot cache a negative count {count}")
        previous = self._entries.pop(key, None)
        if previous is not None:
            self.bytes_used -= _entry_size(key, previous)
        size = _entry_size(key, count)
        if size > self.capacity_bytes:
            self._logger.debug(f"Entry of {size} bytes exceeds the cache budget")
            return
        self._entries[key] = count
        self.bytes_used += size
        while self.bytes_used > self.capacity_bytes:
            old_key, old_count = self._entries.popitem(last=False)
            self.bytes_used -= _entry_size(old_key, old_count)
            self.evictions += 1

    def probe(self, system: System) -> Optional[int]:
        """Return the stored count of a system, if any.

        :param system: the system.
        :return: the count, or None on a miss.
        """
        return self.probe_key(cache_key(system))

    def store(self, system: System, count: int) -> None:
        """Remember the count of a system.

        :param system: the system.
        :param count: its exact count.
        """
        self.store_key(cache_key(system), count)


def cache_probe(cache: ComponentCache, system: System) -> Optional[int]:
    """Probe a cache with a system."""
    return cache.probe(system)


def cache_store(cache: ComponentCache, system: System, count: int) -> None:
    """Store a system's count in a cache."""
    cache.store(system, count)
