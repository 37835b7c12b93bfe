# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the ``ilc-counter`` command line interface."""

from __future__ import annotations

import argparse
import glob
import json
import logging
import os
import sys
from enum import IntEnum
from typing import Any, Optional

from yaml import YAMLError

from ska_ilc_counter.core import System
from ska_ilc_counter.counter import (
    CounterConfig,
    CounterConfigDict,
    CounterStats,
    MemoryLimitExceeded,
    ModelCounter,
    ProbeMode,
    TimeLimitExceeded,
    default_configuration,
    load_configuration,
)
from ska_ilc_counter.graph import SelectionMode
from ska_ilc_counter.io_gen import (
    DOMAIN_PRESETS,
    InstanceParseError,
    generate,
    parameter_grid,
    read_instance,
    write_instance,
)
from ska_ilc_counter.oracle import BudgetExceededError, oracle_count
from ska_ilc_counter.simplify import Technique

from .bench import BenchRunner, CsvRecordWriter, disagreements, summarize

_module_logger = logging.getLogger(__name__)

MEGABYTE = 1024 * 1024


class ExitCode(IntEnum):
    """Process exit statuses."""

    OK = 0
    IO_ERROR = 1
    USAGE_ERROR = 2
    PARSE_ERROR = 3
    TIMEOUT = 4
    MEMOUT = 5
    ORACLE_DISAGREEMENT = 6


def _techniques(text: str) -> list[Technique]:
    if text.strip() == "all":
        return list(Technique)
    try:
        return [Technique(name.strip()) for name in text.split(",") if name.strip()]
    except ValueError as e:
        names = ", ".join(t.value for t in Technique)
        raise argparse.ArgumentTypeError(f"{e}; choose from all, {names}") from e


def _non_negative_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _int_range(text: str) -> tuple[int, int]:
    """Parse ``a`` or ``a:b`` into an inclusive range."""
    low, _, high = text.partition(":")
    try:
        bounds = (int(low), int(high or low))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected N or N:M, got {text!r}") from e
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return bounds


def _add_counter_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        action="append",
        default=[],
        help="path to a YAML counter configuration file",
    )
    parser.add_argument("--no-cache", action="store_true", help="disable the cache")
    parser.add_argument(
        "--no-lp", action="store_true", help="disable the LP-based row removal"
    )
    parser.add_argument(
        "--lp-per-node",
        action="store_true",
        help="run the LP-based row removal at every search node",
    )
    parser.add_argument(
        "--disable",
        type=_techniques,
        default=[],
        help="comma separated simplification techniques to disable, or 'all'",
    )
    parser.add_argument(
        "--select",
        choices=[mode.value for mode in SelectionMode],
        help="branching variable heuristic",
    )
    parser.add_argument(
        "--probe",
        choices=[mode.value for mode in ProbeMode],
        help="consult the cache before or after simplification",
    )
    parser.add_argument(
        "--time-limit", type=_non_negative_float, help="time limit in seconds"
    )
    parser.add_argument("--mem-limit", type=_positive_int, help="memory limit in MB")


def _apply_flags(config: CounterConfig, args: argparse.Namespace) -> CounterConfig:
    changes: dict[str, Any] = {}
    disabled = list(args.disable)
    if args.no_lp:
        disabled.append(Technique.REMOVE_INDIVIDUAL_ROWS_LP)
        changes["lp_per_node"] = False
    if disabled:
        changes["simplify"] = config.simplify.without(*disabled)
    if args.no_cache:
        changes["cache_enabled"] = False
    if args.lp_per_node and not args.no_lp:
        changes["lp_per_node"] = True
    if args.select is not None:
        changes["selection"] = SelectionMode(args.select)
    if args.probe is not None:
        changes["probe"] = ProbeMode(args.probe)
    if args.time_limit is not None:
        changes["time_limit"] = args.time_limit
    if args.mem_limit is not None:
        changes["memory_limit_bytes"] = args.mem_limit * MEGABYTE
    return config.replace(**changes) if changes else config


def _load_counter_config(
    config_file: Optional[str], logger: logging.Logger
) -> CounterConfig:
    """Build a counter configuration from a YAML file, or the defaults.

    :param config_file: path to the file, or None for the defaults.
    :param logger: Logger object to use.
    :return: the configuration, named after the file stem.
    :raises: ValueError if the configuration could not be loaded or is invalid.
    """
    if config_file is None:
        return CounterConfig.from_dict(default_configuration())
    logger.info(f"Reading configuration file {config_file}...")
    try:
        config: CounterConfigDict = load_configuration(config_file)
    except (OSError, UnicodeDecodeError, YAMLError) as e:
        logger.error(
            f"Caught {type(e)} while trying to load configuration file: "
            f"{config_file}"
        )
        raise ValueError(f"Error opening configuration file {config_file}") from e
    except ValueError:
        logger.error(f"Invalid configuration found in: {config_file}")
        raise
    stem = os.path.splitext(os.path.basename(config_file))[0]
    return CounterConfig.from_dict(config, name=config.get("name", stem))


def _read(path: str, logger: logging.Logger) -> tuple[Optional[System], ExitCode]:
    try:
        return read_instance(path), ExitCode.OK
    except OSError as e:
        logger.error(f"Caught {type(e)} while reading {path}: {e}")
        return None, ExitCode.IO_ERROR
    except (UnicodeDecodeError, InstanceParseError) as e:
        logger.error(f"Could not parse {path}: {e}")
        return None, ExitCode.PARSE_ERROR


def _print_stats(stats: CounterStats) -> None:
    for key, value in stats.as_dict().items():
        print(f"{key}={value}", file=sys.stderr)


def _write_stats_json(path: str, document: dict[str, Any]) -> None:
    with open(path, "w", encoding="UTF-8") as file:
        json.dump(document, file, indent=2)
        file.write("\n")


def cmd_count(  # pylint: disable=too-many-return-statements
    args: argparse.Namespace, logger: logging.Logger
) -> ExitCode:
    """Count the solutions of one instance file.

    :param args: parsed command line arguments.
    :param logger: Logger object to use.
    :return: the exit status.
    """
    system, status = _read(args.file, logger)
    if system is None:
        return status
    if len(args.config) > 1:
        logger.error("count accepts at most one --config")
        return ExitCode.USAGE_ERROR
    try:
        config = _apply_flags(
            _load_counter_config(args.config[0] if args.config else None, logger),
            args,
        )
    except ValueError as e:
        logger.error(f"{e}")
        return ExitCode.PARSE_ERROR

    if args.oracle:
        try:
            print(oracle_count(system))
        except BudgetExceededError as e:
            logger.error(f"Oracle refused: {e}")
            return ExitCode.USAGE_ERROR
        return ExitCode.OK

    document: dict[str, Any] = {"instance": args.file, "config": config.fingerprint}
    try:
        result = ModelCounter(config, logger=logger).count(system)
    except (TimeLimitExceeded, MemoryLimitExceeded) as e:
        timed_out = isinstance(e, TimeLimitExceeded)
        outcome = "timeout" if timed_out else "memout"
        _print_stats(e.stats)
        if args.stats_json:
            document.update(count=None, status=outcome, stats=e.stats.as_dict())
            _write_stats_json(args.stats_json, document)
        print(outcome)
        return ExitCode.TIMEOUT if timed_out else ExitCode.MEMOUT

    _print_stats(result.stats)
    if args.stats_json:
        document.update(
            count=str(result.count), status="ok", stats=result.stats.as_dict()
        )
        _write_stats_json(args.stats_json, document)

    if args.seed_check:
        try:
            expected = oracle_count(system)
        except BudgetExceededError as e:
            logger.warning(f"Skipping the oracle check: {e}")
        else:
            if expected != result.count:
                logger.error(f"Oracle counts {expected}, search counts {result.count}")
                print(result.count)
                return ExitCode.ORACLE_DISAGREEMENT
            logger.info("Oracle agrees")
    print(result.count)
    return ExitCode.OK


def cmd_generate(args: argparse.Namespace, logger: logging.Logger) -> ExitCode:
    """Write random instances for every parameter tuple.

    :param args: parsed command line arguments.
    :param logger: Logger object to use.
    :return: the exit status.
    """
    lower, upper = DOMAIN_PRESETS[args.domain]
    if args.lower is not None:
        lower = args.lower
    if args.upper is not None:
        upper = args.upper
    try:
        grid = list(
            parameter_grid(
                args.n,
                args.m,
                args.l,
                args.count,
                args.seed,
                lower,
                upper,
                args.coefficients,
                args.rhs,
            )
        )
    except ValueError as e:
        logger.error(f"Invalid generator parameters: {e}")
        return ExitCode.USAGE_ERROR
    if not grid:
        logger.warning("No parameter tuple satisfies m <= n and l <= n")
    try:
        os.makedirs(args.out, exist_ok=True)
        for name, params in grid:
            path = os.path.join(args.out, f"{name}.ilc")
            write_instance(path, generate(params), params.header_comments())
            print(path)
    except OSError as e:
        logger.error(f"Caught {type(e)} while writing instances: {e}")
        return ExitCode.IO_ERROR
    logger.info(f"Wrote {len(grid)} instances to {args.out}")
    return ExitCode.OK


def _instance_paths(sources: list[str]) -> list[str]:
    paths: list[str] = []
    for source in sources:
        if os.path.isdir(source):
            paths += sorted(glob.glob(os.path.join(source, "*.ilc")))
        else:
            paths.append(source)
    return paths


def cmd_bench(  # pylint: disable=too-many-return-statements
    args: argparse.Namespace, logger: logging.Logger
) -> ExitCode:
    """Count every instance under every configuration and write a CSV.

    :param args: parsed command line arguments.
    :param logger: Logger object to use.
    :return: the exit status.
    """
    instances: dict[str, System] = {}
    for path in _instance_paths(args.sources):
        system, status = _read(path, logger)
        if system is None:
            return status
        instances[path] = system
    if not instances:
        logger.error("No instances found")
        return ExitCode.IO_ERROR

    try:
        configs = [
            _apply_flags(_load_counter_config(path, logger), args)
            for path in args.config or [None]
        ]
        runner = BenchRunner(configs, jobs=args.jobs, logger=logger)
    except ValueError as e:
        logger.error(f"{e}")
        return ExitCode.PARSE_ERROR

    try:
        with runner, open(args.csv, "w", encoding="UTF-8", newline="") as stream:
            runner.subscribe_records(CsvRecordWriter(stream))
            records = runner.run(instances)
    except OSError as e:
        logger.error(f"Caught {type(e)} while writing {args.csv}: {e}")
        return ExitCode.IO_ERROR
    except RuntimeError as e:
        if not isinstance(e.__cause__, OSError):
            raise
        logger.error(f"Caught {type(e.__cause__)} while writing {args.csv}: {e}")
        return ExitCode.IO_ERROR

    for instance in disagreements(records):
        logger.error(f"Configurations disagree on the count of {instance}")
    print(f"{'config':<32} {'total':>6} {'unique':>6} {'fastest':>7} {'mean_s':>9}")
    for summary in summarize(records):
        mean = "-" if summary.mean_time is None else f"{summary.mean_time:.3f}"
        print(
            f"{summary.config:<32} {summary.total:>6} {summary.unique:>6} "
            f"{summary.fastest:>7} {mean:>9}"
        )
    if disagreements(records):
        return ExitCode.ORACLE_DISAGREEMENT
    return ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser of the command line interface."""
    parser = argparse.ArgumentParser(
        prog="ilc-counter",
        description="Exact model counting for integer linear constraints",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log at DEBUG level"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    count = commands.add_parser("count", help="count the solutions of an instance")
    count.add_argument("file", help="path to an instance file")
    _add_counter_flags(count)
    count.add_argument(
        "--seed-check",
        action="store_true",
        help="cross-check the count with brute-force enumeration when feasible",
    )
    count.add_argument(
        "--oracle", action="store_true", help="count by brute-force enumeration"
    )
    count.add_argument("--stats-json", help="write statistics as JSON to this path")

    gen = commands.add_parser("generate", help="write random instances")
    gen.add_argument("-n", type=_int_range, required=True, help="variables, N or N:M")
    gen.add_argument("-m", type=_int_range, required=True, help="rows, N or N:M")
    gen.add_argument(
        "-l", type=_int_range, required=True, help="nonzeros per row, N or N:M"
    )
    gen.add_argument("--count", type=_positive_int, default=1, help="per tuple")
    gen.add_argument("--seed", type=int, default=0, help="base seed")
    gen.add_argument("--domain", choices=sorted(DOMAIN_PRESETS), default="random")
    gen.add_argument("--lower", type=int, help="overrides the domain preset")
    gen.add_argument("--upper", type=int, help="overrides the domain preset")
    gen.add_argument("--coefficients", type=_int_range, default=(-10, 10))
    gen.add_argument("--rhs", type=_int_range, default=(-20, 20))
    gen.add_argument("-o", "--out", required=True, help="output directory")

    bench = commands.add_parser("bench", help="benchmark configurations")
    bench.add_argument(
        "sources", nargs="+", help="instance files or directories of *.ilc files"
    )
    _add_counter_flags(bench)
    bench.add_argument("--jobs", type=_positive_int, default=1, help="worker threads")
    bench.add_argument("--csv", default="bench.csv", help="CSV output path")
    return parser


def main(argv: list[str]) -> int:
    """Run the command line interface.

    :param argv: command line arguments.
    :return: the exit status.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    commands = {"count": cmd_count, "generate": cmd_generate, "bench": cmd_bench}
    return int(commands[args.command](args, _module_logger))


def run() -> None:
    """Entry point of the ``ilc-counter`` script."""
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    run()
