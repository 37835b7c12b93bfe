# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides unit tests for the benchmark harness."""

import csv
import io
import logging
import threading
from unittest.mock import MagicMock, patch

import pytest

from ska_ilc_counter.cli import (
    CSV_COLUMNS,
    BenchRecord,
    BenchRunner,
    ConfigSummary,
    CsvRecordWriter,
    disagreements,
    summarize,
)
from ska_ilc_counter.core import System
from ska_ilc_counter.counter import CounterConfig

from .conftest import Helpers


def _record(
    instance: str, config: str, time_s: float, count: str = "5", status: str = "ok"
) -> BenchRecord:
    return BenchRecord(instance, count, status, time_s, 3, 0, 1, 0, config)


@pytest.fixture(name="records")
def records_fixture() -> list[BenchRecord]:
    """
    Fixture to return records of two configurations.

    :return: the records.
    """
    return [
        _record("a", "lean", 1.0),
        _record("a", "full", 2.0),
        _record("b", "lean", 0.0, "timeout", "timeout"),
        _record("b", "full", 0.5, "3"),
        _record("c", "lean", 1.0),
        _record("c", "full", 1.0),
    ]


class TestSummary:
    """Test aggregating records."""

    def test_summarize(self, records: list[BenchRecord]) -> None:
        """Test totals, unique solves, strict wins and mean times.

        :param records: records of two configurations.
        """
        lean, full = summarize(records)
        assert lean == ConfigSummary("lean", 2, 0, 1, 1.0)
        assert full.config == "full"
        assert (full.total, full.unique, full.fastest) == (3, 1, 1)
        assert full.mean_time == pytest.approx(3.5 / 3)

    def test_single_configuration(self) -> None:
        """Test nothing is unique without a second configuration."""
        (summary,) = summarize([_record("a", "only", 1.0)])
        assert summary == ConfigSummary("only", 1, 0, 1, 1.0)

    def test_nothing_solved(self) -> None:
        """Test the mean time of a configuration that solved nothing."""
        (summary,) = summarize([_record("a", "only", 0.1, "timeout", "timeout")])
        assert summary == ConfigSummary("only", 0, 0, 0, None)

    def test_disagreements(self, records: list[BenchRecord]) -> None:
        """Test differing counts are reported per instance.

        :param records: records of two configurations.
        """
        assert not disagreements(records)
        records.append(_record("d", "lean", 1.0, "4"))
        records.append(_record("d", "full", 1.0, "7"))
        assert disagreements(records) == ["d"]

    def test_csv_row(self) -> None:
        """Test the CSV writer emits the header and one row per record."""
        stream = io.StringIO()
        writer = CsvRecordWriter(stream)
        writer(_record("a", "lean", 0.12345))
        lines = stream.getvalue().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1] == "a,5,ok,0.123,3,0,1,0,lean"

    def test_csv_keeps_large_counts(self) -> None:
        """Test a count beyond 64 bits is written and read back digit for digit."""
        stream = io.StringIO(newline="")
        CsvRecordWriter(stream)(_record("big", "lean", 1.0, str(64**20)))
        stream.seek(0)
        (row,) = csv.DictReader(stream)
        assert row["count"] == "1329227995784915872903807060280344576"
        assert int(row["count"]) == 64**20


class TestBenchRunner:
    """Test running instances on worker threads."""

    @pytest.mark.parametrize("jobs", [1, 3])
    def test_run(self, jobs: int, example: System, logger: logging.Logger) -> None:
        """Test every instance is counted under every configuration.

        :param jobs: number of worker threads.
        :param example: the worked example.
        :param logger: the test logger.
        """
        configs = [
            CounterConfig(name="full"),
            CounterConfig(name="bare", cache_enabled=False),
        ]
        instances = {
            "example": example,
            "random": Helpers.random_system(3),
            "other": Helpers.random_system(4),
        }
        runner = BenchRunner(configs, jobs=jobs, logger=logger)
        callback = MagicMock()
        runner.subscribe_records(callback)
        records = runner.run(instances)

        assert [(r.instance, r.config) for r in records] == [
            (name, config.name) for name in instances for config in configs
        ]
        assert callback.call_count == 6
        assert {r.count for r in records if r.instance == "example"} == {"8"}
        assert not disagreements(records)

    def test_timeouts(self, example: System) -> None:
        """Test a zero time limit turns every run into a timeout record.

        :param example: the worked example.
        """
        runner = BenchRunner([CounterConfig(time_limit=0)])
        (record,) = runner.run({"example": example})
        assert record.status == "timeout"
        assert record.count == "timeout"
        assert not record.solved

    def test_memouts(self, example: System) -> None:
        """Test a tiny memory limit turns a run into a memout record.

        :param example: the worked example.
        """
        runner = BenchRunner([CounterConfig(memory_limit_bytes=1)])
        (record,) = runner.run({"example": example})
        assert record.status == "memout"

    def test_unexpected_error(self, example: System) -> None:
        """Test a failing run is raised after the queues drain.

        :param example: the worked example.
        """
        runner = BenchRunner([CounterConfig()])
        with patch(
            "ska_ilc_counter.cli.bench.run_task", side_effect=RuntimeError("boom")
        ):
            with pytest.raises(RuntimeError, match="1 unexpected errors"):
                runner.run({"example": example})
        runner.stop()

    @pytest.mark.parametrize(
        "configs,message",
        [
            pytest.param([], "At least one", id="none"),
            pytest.param(
                [CounterConfig(), CounterConfig()], "must be distinct", id="names"
            ),
        ],
    )
    def test_invalid_configs(self, configs: list, message: str) -> None:
        """Test the configuration list is checked.

        :param configs: the configurations.
        :param message: expected error fragment.
        """
        with pytest.raises(ValueError, match=message):
            BenchRunner(configs)

    def test_invalid_jobs(self) -> None:
        """Test the worker count must be positive."""
        with pytest.raises(ValueError, match="jobs"):
            BenchRunner([CounterConfig()], jobs=0)

    def test_unsubscribe(
        self, example: System, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test unsubscribing stops callbacks and unknown ids are logged.

        :param example: the worked example.
        :param caplog: pytest log capture fixture.
        """
        runner = BenchRunner([CounterConfig()])
        callback = MagicMock()
        subscription = runner.subscribe_records(callback)
        runner.unsubscribe_records(subscription)
        runner.run({"example": example})
        callback.assert_not_called()

        runner.unsubscribe_records(subscription)
        Helpers.assert_expected_logs(
            caplog,
            [f"Could not unsubscribe from subscription with ID: {subscription}"],
        )

    def test_failing_subscriber(self, example: System) -> None:
        """Test a failing subscriber neither hides records nor passes silently.

        :param example: the worked example.
        """
        failing = MagicMock(side_effect=OSError("No space left on device"))
        later = MagicMock()
        with BenchRunner([CounterConfig(name="a"), CounterConfig(name="b")]) as runner:
            runner.subscribe_records(failing)
            runner.subscribe_records(later)
            with pytest.raises(RuntimeError, match="2 unexpected errors") as error:
                runner.run({"example": example})
        assert isinstance(error.value.__cause__, OSError)
        assert failing.call_count == 2
        assert later.call_count == 2

    def test_stop(self, example: System) -> None:
        """Test stopping ends every thread the runner started.

        :param example: the worked example.
        """
        before = threading.active_count()
        with BenchRunner([CounterConfig()], jobs=3) as runner:
            assert threading.active_count() == before + 4
            (record,) = runner.run({"example": example})
            assert record.count == "8"
        assert threading.active_count() == before
        runner.stop()
        with pytest.raises(RuntimeError, match="stopped"):
            runner.run({"example": example})
