# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides test fixtures for the ILC counter."""

import logging
import time
from typing import Final

import numpy as np
import pytest

from ska_ilc_counter.core import Row, System
from ska_ilc_counter.io_gen import GenParams, generate
from ska_ilc_counter.lp import ExactLpSolver

EXAMPLE_INSTANCE: Final = "tests/data/example1.ilc"

# Solutions of the worked example, by ascending variable id
EXAMPLE_SOLUTIONS: Final = [
    (0, 0, 0),
    (0, 1, 0),
    (1, 0, 0),
    (1, 0, 1),
    (1, 1, 0),
    (2, 0, 0),
    (2, 0, 1),
    (3, 0, 0),
]


def example_system() -> System:
    """Return the worked example: four rows over x1..x3 in [0, 3]."""
    return System.build(
        [
            Row.from_terms({1: 1, 2: -1, 3: 1}, 3),
            Row.from_terms({1: 1, 2: 2, 3: 1}, 3),
            Row.from_terms({1: -1, 2: 1, 3: 3}, 2),
            Row.from_terms({1: -2, 2: -1, 3: -3}, 4),
        ],
        {1: (0, 3), 2: (0, 3), 3: (0, 3)},
    )


@pytest.fixture(name="example")
def example_fixture() -> System:
    """
    Fixture to return the worked example system.

    :return: the worked example, which has 8 solutions.
    """
    return example_system()


@pytest.fixture(scope="session", name="logger")
def logger_fixture() -> logging.Logger:
    """
    Fixture that returns a default logger.

    The logger will be set to DEBUG level.

    :returns: a logger.
    """
    debug_logger = logging.getLogger()
    debug_logger.setLevel(logging.DEBUG)
    return debug_logger


@pytest.fixture(name="lp_solver")
def lp_solver_fixture(logger: logging.Logger) -> ExactLpSolver:
    """
    Fixture to return an exact LP solver.

    :param logger: the test logger.
    :return: a fresh solver.
    """
    return ExactLpSolver(logger=logger)


class Helpers:
    """Test helper functions."""

    @staticmethod
    def random_system(
        seed: int,
        max_variables: int = 6,
        lower: int = -4,
        upper: int = 3,
    ) -> System:
        """
        Generate a small random system.

        n is drawn in [2, max_variables], m in [1, n] and l in [1, n]; the
        domain is a random sub-interval of [lower, upper].

        :param seed: seed of the draw.
        :param max_variables: largest number of variables.
        :param lower: smallest allowed lower bound.
        :param upper: largest allowed upper bound.
        :return: the system.
        """
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, max_variables + 1))
        m = int(rng.integers(1, n + 1))
        nonzeros = int(rng.integers(1, n + 1))
        low = int(rng.integers(lower, upper + 1))
        high = int(rng.integers(low, upper + 1))
        return generate(
            GenParams(
                n,
                m,
                nonzeros,
                low,
                high,
                coefficient_range=(-5, 5),
                rhs_range=(-8, 8),
                seed=seed,
            )
        )

    @staticmethod
    def assert_expected_logs(
        caplog: pytest.LogCaptureFixture,
        expected_logs: list[str],
        timeout: int = 2,
    ) -> None:
        """
        Assert the expected log messages are in the captured logs.

        Each expected message must be contained in a captured record, in order.
        The captured logs are cleared before returning for subsequent assertions.

        :param caplog: pytest log capture fixture.
        :param expected_logs: to assert are in the log capture fixture.
        :param timeout: time to wait for the last log message to appear, default 2 secs.
        """
        start_time = time.time()
        while time.time() - start_time < timeout:
            if expected_logs[-1] in caplog.text:
                break
        else:
            pytest.fail(f"'{expected_logs}' not found in logs within {timeout} seconds")
        messages = iter(record.message for record in caplog.records)
        for expected in expected_logs:
            assert any(expected in message for message in messages), expected
        caplog.clear()
