# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the benchmark harness.

Worker threads count instances taken from a task queue and push a
:class:`BenchRecord` per run onto a publish queue. A publisher thread hands
every record to the subscribed callbacks, such as the CSV writer and the
summary.
"""

from __future__ import annotations

import csv
import logging
import queue
import threading
from collections import defaultdict
from dataclasses import dataclass
from threading import Thread
from typing import IO, Callable, Dict, Final, Optional

from ska_ilc_counter.core import System
from ska_ilc_counter.counter import (
    CounterConfig,
    MemoryLimitExceeded,
    ModelCounter,
    TimeLimitExceeded,
)

_module_logger = logging.getLogger(__name__)

# Wakes a blocked worker or publisher thread and ends it
_STOP: Final = object()

CSV_COLUMNS: Final = (
    "instance",
    "count",
    "status",
    "time_s",
    "nodes",
    "cache_hits",
    "rows_removed_total",
    "vars_removed_total",
    "config",
)


@dataclass(frozen=True)
class BenchRecord:  # pylint: disable=too-many-instance-attributes
    """Outcome of counting one instance under one configuration."""

    instance: str
    count: str  # decimal count, or "timeout"/"memout"
    status: str  # "ok", "timeout" or "memout"
    time_s: float
    nodes: int
    cache_hits: int
    rows_removed_total: int
    vars_removed_total: int
    config: str

    @property
    def solved(self) -> bool:
        """Whether the count finished."""
        return self.status == "ok"

    def as_row(self) -> dict[str, str]:
        """Return the CSV row of this record."""
        return {
            "instance": self.instance,
            "count": self.count,
            "status": self.status,
            "time_s": f"{self.time_s:.3f}",
            "nodes": str(self.nodes),
            "cache_hits": str(self.cache_hits),
            "rows_removed_total": str(self.rows_removed_total),
            "vars_removed_total": str(self.vars_removed_total),
            "config": self.config,
        }


@dataclass(frozen=True)
class BenchTask:
    """One instance to count under one configuration."""

    instance: str
    system: System
    config: CounterConfig


def run_task(task: BenchTask, logger: logging.Logger) -> BenchRecord:
    """Count one instance and turn the outcome into a record.

    :param task: the task.
    :param logger: Logger object to use.
    :return: the record; resource breaches become timeout/memout records.
    """
    counter = ModelCounter(task.config, logger=logger)
    try:
        result = counter.count(task.system)
        count, status, stats = str(result.count), "ok", result.stats
    except TimeLimitExceeded as e:
        count, status, stats = "timeout", "timeout", e.stats
    except MemoryLimitExceeded as e:
        count, status, stats = "memout", "memout", e.stats
    return BenchRecord(
        task.instance,
        count,
        status,
        stats.wall_time,
        stats.nodes,
        stats.cache_hits,
        stats.simplify.rows_removed_total,
        stats.simplify.variables_removed,
        task.config.name,
    )


class BenchWorkers:
    """Pool of threads that count queued tasks."""

    def __init__(
        self,
        jobs: int,
        logger: logging.Logger | None = None,
    ) -> None:
        """Initialise the pool.

        :param jobs: number of worker threads.
        :param logger: Logger object to use (optional)
        :raises: ValueError if jobs is not positive.
        """
        if jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {jobs}")
        self._logger = logger or _module_logger
        self.task_queue: queue.Queue = queue.Queue()
        self.publish_queue: queue.Queue = queue.Queue()
        self._threads = [
            Thread(target=self._work, daemon=True, name=f"bench-worker-{k}")
            for k in range(jobs)
        ]

    def start(self) -> None:
        """Start the worker threads."""
        for thread in self._threads:
            thread.start()

    def stop(self) -> None:
        """Stop the worker threads once the queued tasks are done."""
        for _ in self._threads:
            self.task_queue.put(_STOP)
        for thread in self._threads:
            thread.join()

    def _work(self) -> None:
        while True:
            task = self.task_queue.get()
            if task is _STOP:
                self.task_queue.task_done()
                return
            try:
                self._logger.debug(f"Counting {task.instance} with {task.config.name}")
                self.publish_queue.put(run_task(task, self._logger))
            except Exception as e:  # pylint: disable=broad-exception-caught
                self._logger.error(f"Caught {e!r} while counting {task.instance}")
                self.publish_queue.put(e)
            finally:
                self.task_queue.task_done()


class BenchPublisher:
    """Hand every finished record to the subscribed callbacks."""

    def __init__(self, publish_queue: queue.Queue, logger: logging.Logger) -> None:
        """Initialise the instance.

        :param publish_queue: The queue to retrieve records from.
        :param logger: Logger object to use.
        """
        self._publish_queue = publish_queue
        self._logger = logger

        # The subscriptions dict maps a subscription id to
        # a record callback and optional error callback
        self._subscriptions: Dict[int, tuple[Callable, Callable | None]] = {}
        self._subscription_counter: int = 0
        self._lock = threading.Lock()
        self._publish_thread: Thread = Thread(
            target=self._publish, daemon=True, name="bench-publisher"
        )
        self._publish_thread.start()

    def stop(self) -> None:
        """Stop the publish thread once the queued items are handed out."""
        self._publish_queue.put(_STOP)
        self._publish_thread.join()

    def _publish(self) -> None:
        while True:
            next_item = self._publish_queue.get()
            if next_item is _STOP:
                self._publish_queue.task_done()
                return
            try:
                with self._lock:
                    callbacks = list(self._subscriptions.values())
                failures = self._deliver(next_item, callbacks)
                # A failing subscriber is reported to every error callback
                for failure in failures:
                    self._deliver(failure, callbacks)
            finally:
                self._publish_queue.task_done()

    def _deliver(
        self, item: BenchRecord | Exception, callbacks: list[tuple]
    ) -> list[Exception]:
        failures: list[Exception] = []
        for record_callback, error_callback in callbacks:
            try:
                if isinstance(item, BenchRecord):
                    record_callback(item)
                elif error_callback is not None:
                    error_callback(item)
            except Exception as e:  # pylint: disable=broad-exception-caught
                self._logger.error(f"Caught {e!r} in a subscriber callback")
                failures.append(e)
        return failures

    def subscribe(
        self, record_callback: Callable, error_callback: Optional[Callable] = None
    ) -> int:
        """Subscribe to records.

        :param record_callback: Function to call with each BenchRecord.
        :param error_callback: Function to call with an unexpected exception.
        :return: The subscription id.
        """
        with self._lock:
            self._subscription_counter += 1
            self._subscriptions[self._subscription_counter] = (
                record_callback,
                error_callback,
            )
            return self._subscription_counter

    def unsubscribe(self, subscription_id: int) -> None:
        """Unsubscribe from records.

        :param subscription_id: The subscription id to remove.
        """
        with self._lock:
            if subscription_id in self._subscriptions:
                del self._subscriptions[subscription_id]
                return
        self._logger.warning(
            "Could not unsubscribe from subscription with ID: %s", subscription_id
        )


class CsvRecordWriter:
    """Write records to a CSV stream as they arrive."""

    def __init__(self, stream: IO[str]) -> None:
        """Write the header.

        :param stream: text stream opened with ``newline=""``.
        """
        self._writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS)
        self._writer.writeheader()
        self._stream = stream

    def __call__(self, record: BenchRecord) -> None:
        """Append a record."""
        self._writer.writerow(record.as_row())
        self._stream.flush()


@dataclass(frozen=True)
class ConfigSummary:
    """Aggregate results of one configuration."""

    config: str
    total: int  # instances solved
    unique: int  # solved by no other configuration
    fastest: int  # solved strictly faster than every other configuration
    mean_time: Optional[float]  # over solved instances


def summarize(records: list[BenchRecord]) -> list[ConfigSummary]:
    """Summarise records per configuration, in order of first appearance.

    :param records: the records.
    :return: one summary per configuration.
    """
    configs = list(dict.fromkeys(record.config for record in records))
    solved_by: dict[str, list[BenchRecord]] = defaultdict(list)
    for record in records:
        if record.solved:
            solved_by[record.instance].append(record)

    unique: dict[str, int] = defaultdict(int)
    fastest: dict[str, int] = defaultdict(int)
    for solved in solved_by.values():
        if len(configs) > 1 and len(solved) == 1:
            unique[solved[0].config] += 1
        best = min(record.time_s for record in solved)
        winners = [record for record in solved if record.time_s == best]
        if len(winners) == 1:
            fastest[winners[0].config] += 1

    summaries = []
    for config in configs:
        times = [r.time_s for r in records if r.config == config and r.solved]
        summaries.append(
            ConfigSummary(
                config,
                len(times),
                unique[config],
                fastest[config],
                sum(times) / len(times) if times else None,
            )
        )
    return summaries


def disagreements(records: list[BenchRecord]) -> list[str]:
    """Return the instances whose solved counts differ between configurations."""
    counts: dict[str, set[str]] = defaultdict(set)
    for record in records:
        if record.solved:
            counts[record.instance].add(record.count)
    return sorted(instance for instance, seen in counts.items() if len(seen) > 1)


class BenchRunner:
    """Count every instance under every configuration."""

    def __init__(
        self,
        configs: list[CounterConfig],
        jobs: int = 1,
        logger: logging.Logger | None = None,
    ) -> None:
        """Initialise the runner.

        :param configs: configurations to compare; names must be distinct.
        :param jobs: number of worker threads.
        :param logger: Logger object to use (optional)
        :raises: ValueError if no configuration is given or names repeat.
        """
        if not configs:
            raise ValueError("At least one configuration is required")
        names = [config.name for config in configs]
        if len(set(names)) != len(names):
            raise ValueError(f"Configuration names must be distinct: {names}")
        self._logger = logger or _module_logger
        self.configs = configs
        self._workers = BenchWorkers(jobs, self._logger)
        self._publisher = BenchPublisher(self._workers.publish_queue, self._logger)
        self._stopped = False
        self._workers.start()

    def __enter__(self) -> BenchRunner:
        """Use the runner as a context manager that stops it on exit."""
        return self

    def __exit__(self, *exc_info: object) -> None:
        """Stop the runner."""
        self.stop()

    def stop(self) -> None:
        """Stop the worker and publish threads. Stopping twice is a no-op."""
        if self._stopped:
            return
        self._stopped = True
        self._workers.stop()
        self._publisher.stop()

    def subscribe_records(
        self,
        record_callback: Callable,
        error_callback: Optional[Callable] = None,
    ) -> int:
        """Subscribe to records as they are produced.

        :param record_callback: Function to call with each BenchRecord.
        :param error_callback: Function to call with an unexpected exception.
        :return: The subscription id.
        """
        return self._publisher.subscribe(record_callback, error_callback)

    def unsubscribe_records(self, subscription_id: int) -> None:
        """Unsubscribe from records.

        :param subscription_id: The id to unsubscribe.
        """
        self._publisher.unsubscribe(subscription_id)

    def run(self, instances: dict[str, System]) -> list[BenchRecord]:
        """Count the instances and wait for every record to be published.

        :param instances: systems by instance name.
        :return: the records, ordered by instance then configuration.
        :raises: RuntimeError if the runner was stopped, or if a run or a
            subscriber failed for a reason other than a resource limit. The
            first failure is chained as the cause.
        """
        if self._stopped:
            raise RuntimeError("The benchmark runner has been stopped")
        records: list[BenchRecord] = []
        errors: list[Exception] = []
        subscription = self.subscribe_records(records.append, errors.append)
        self._logger.info(
            f"Running {len(instances)} instances under "
            f"{len(self.configs)} configurations"
        )
        for name, system in instances.items():
            for config in self.configs:
                self._workers.task_queue.put(BenchTask(name, system, config))
        self._workers.task_queue.join()
        self._workers.publish_queue.join()
        self.unsubscribe_records(subscription)
        if errors:
            raise RuntimeError(
                f"{len(errors)} unexpected errors during the benchmark run"
            ) from errors[0]

        order = {name: k for k, name in enumerate(instances)}
        rank = {config.name: k for k, config in enumerate(self.configs)}
        return sorted(records, key=lambda r: (order[r.instance], rank[r.config]))
