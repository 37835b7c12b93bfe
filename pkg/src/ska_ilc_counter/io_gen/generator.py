# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module generates random ILC instances reproducibly."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Final, Iterator

import numpy as np

from ska_ilc_counter.core import Row, System

GENERATOR_NAME: Final = "numpy.random.PCG64"

DOMAIN_PRESETS: Final = {
    "random": (-8, 7),
    "application": (-32, 31),
}


@dataclass(frozen=True)
class GenParams:  # pylint: disable=too-many-instance-attributes
    """Parameters of one random instance."""

    n: int
    m: int
    max_nonzeros: int
    lower: int = -8
    upper: int = 7
    coefficient_range: tuple[int, int] = (-10, 10)
    rhs_range: tuple[int, int] = (-20, 20)
    seed: int = 0

    def __post_init__(self) -> None:
        """Check the parameters.

        :raises: ValueError if a parameter is out of range.
        """
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if not 1 <= self.max_nonzeros <= self.n:
            raise ValueError(
                f"max_nonzeros must lie in [1, {self.n}], got {self.max_nonzeros}"
            )
        if self.lower > self.upper:
            raise ValueError(f"Empty domain [{self.lower}, {self.upper}]")
        low, high = self.coefficient_range
        if low > high or low == high == 0:
            raise ValueError(
                f"Coefficient range {self.coefficient_range} holds no nonzero value"
            )
        if self.rhs_range[0] > self.rhs_range[1]:
            raise ValueError(f"Empty rhs range {self.rhs_range}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")

    def header_comments(self) -> list[str]:
        """Describe the parameters as instance file comments."""
        low, high = self.coefficient_range
        return [
            f"generator: {GENERATOR_NAME} seed={self.seed}",
            f"n={self.n} m={self.m} l={self.max_nonzeros}",
            f"domain=[{self.lower},{self.upper}]",
            f"coefficients=[{low},{high}]\\{{0}}",
            f"rhs=[{self.rhs_range[0]},{self.rhs_range[1]}]",
        ]


def _nonzero(rng: np.random.Generator, low: int, high: int, size: int) -> list[int]:
    """Draw uniformly from ``[low, high]`` without 0."""
    spans_zero = low <= 0 <= high
    width = high - low + 1 - (1 if spans_zero else 0)
    values = []
    for offset in rng.integers(0, width, size=size):
        value = low + int(offset)
        if spans_zero and value >= 0:
            value += 1
        values.append(value)
    return values


def generate(params: GenParams) -> System:
    """Generate a random system.

    Each row picks its number of nonzeros uniformly in ``[1, l]``, then that
    many distinct variables, nonzero coefficients and a rhs, all uniformly.

    :param params: the parameters.
    :return: the system.
    """
    rng = np.random.Generator(np.random.PCG64(params.seed))
    rows = []
    for _ in range(params.m):
        k = int(rng.integers(1, params.max_nonzeros + 1))
        variables = [int(j) + 1 for j in rng.choice(params.n, size=k, replace=False)]
        coefficients = _nonzero(rng, *params.coefficient_range, size=k)
        rhs = int(rng.integers(params.rhs_range[0], params.rhs_range[1] + 1))
        rows.append(Row.from_terms(zip(variables, coefficients), rhs))
    bounds = {j: (params.lower, params.upper) for j in range(1, params.n + 1)}
    return System.build(rows, bounds)


def derive_seed(base_seed: int, *labels: int) -> int:
    """Derive a 64-bit seed from a base seed and integer labels."""
    sequence = np.random.SeedSequence([base_seed, *labels])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def parameter_grid(  # pylint: disable=too-many-arguments
    n_range: tuple[int, int],
    m_range: tuple[int, int],
    l_range: tuple[int, int],
    count: int = 1,
    seed: int = 0,
    lower: int = -8,
    upper: int = 7,
    coefficient_range: tuple[int, int] = (-10, 10),
    rhs_range: tuple[int, int] = (-20, 20),
) -> Iterator[tuple[str, GenParams]]:
    """Enumerate instance parameters over inclusive ranges of n, m and l.

    Only tuples with ``m <= n`` and ``l <= n`` are produced, ``count`` of
    each.

    :return: pairs of instance name and parameters.
    """
    for n, m, nonzeros in itertools.product(
        range(n_range[0], n_range[1] + 1),
        range(m_range[0], m_range[1] + 1),
        range(l_range[0], l_range[1] + 1),
    ):
        if m > n or nonzeros > n:
            continue
        for k in range(count):
            yield f"ilc_n{n}_m{m}_l{nonzeros}_{k:03d}", GenParams(
                n,
                m,
                nonzeros,
                lower,
                upper,
                coefficient_range,
                rhs_range,
                derive_seed(seed, n, m, nonzeros, k),
            )
