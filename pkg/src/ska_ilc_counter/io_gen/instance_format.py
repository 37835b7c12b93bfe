# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module reads and writes the ILC instance text format.

An instance looks like::

    # comment
    p ilc 3 2
    d 1 0 3
    d 2 0 3
    d 3 0 3
    r 1*x1 -2*x2 <= 4
    r -1*x1 1*x2 1*x3 <= 2

Rows may use ``<=``, ``>=``, ``=``, ``<`` or ``>``; everything is stored as
``<=`` rows. Coefficients may be omitted (``x1 + x2 >= 1``).
"""

from __future__ import annotations

import re
from typing import Final, Iterable, Optional

from ska_ilc_counter.core import Row, System

FORMAT_TAG: Final = "ilc"

_INTEGER = re.compile(r"[+-]?\d+")
_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?x(\d+)\s*")
_OPERATOR = re.compile(r"(<=|>=|=|<|>)")


class InstanceParseError(ValueError):
    """Raised when an instance text is malformed."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        """Initialise the error.

        :param message: what is wrong.
        :param line_number: 1-based line of the problem, if known.
        """
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


def _integer(token: str, what: str, line_number: int) -> int:
    if not _INTEGER.fullmatch(token):
        raise InstanceParseError(
            f"{what} must be an integer literal, got {token!r}", line_number
        )
    return int(token)


def _parse_terms(
    text: str, declared: dict[int, tuple[int, int]], line_number: int
) -> list[tuple[int, int]]:
    terms: list[tuple[int, int]] = []
    position = 0
    while position < len(text):
        match = _TERM.match(text, position)
        if match is None or match.end() == position:
            rest = text[position:].strip()
            if not rest:
                break
            if re.match(r"[+-]?\s*\d*[./]", rest):
                raise InstanceParseError(
                    f"non-integer literal in {rest.split()[0]!r}", line_number
                )
            raise InstanceParseError(f"malformed term {rest.split()[0]!r}", line_number)
        sign, magnitude, variable = match.groups()
        coefficient = int(magnitude) if magnitude else 1
        if sign == "-":
            coefficient = -coefficient
        j = int(variable)
        if j not in declared:
            raise InstanceParseError(f"undeclared variable x{j}", line_number)
        terms.append((j, coefficient))
        position = match.end()
    return terms


def _parse_row(
    body: str, declared: dict[int, tuple[int, int]], line_number: int
) -> list[Row]:
    parts = _OPERATOR.split(body)
    if len(parts) != 3:
        raise InstanceParseError(
            "a row needs exactly one of <=, >=, =, <, >", line_number
        )
    lhs, operator, rhs_text = parts
    terms = _parse_terms(lhs, declared, line_number)
    rhs = _integer(rhs_text.strip(), "right-hand side", line_number)
    negated = [(j, -a) for j, a in terms]
    if operator == "<=":
        return [Row.from_terms(terms, rhs)]
    if operator == ">=":
        return [Row.from_terms(negated, -rhs)]
    if operator == "<":
        return [Row.from_terms(terms, rhs - 1)]
    if operator == ">":
        return [Row.from_terms(negated, -rhs - 1)]
    return [Row.from_terms(terms, rhs), Row.from_terms(negated, -rhs)]


def parse(text: str) -> System:  # pylint: disable=too-many-branches
    """Parse an instance text.

    :param text: the instance text.
    :return: the system, rows numbered from 1 in file order.
    :raises: InstanceParseError if the text is malformed.
    """
    header: Optional[tuple[int, int]] = None
    declared: dict[int, tuple[int, int]] = {}
    rows: list[Row] = []
    row_lines = 0

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *rest = line.split(maxsplit=1)
        body = rest[0] if rest else ""
        if kind == "p":
            if header is not None:
                raise InstanceParseError("duplicate header", line_number)
            fields = body.split()
            if len(fields) != 3 or fields[0] != FORMAT_TAG:
                raise InstanceParseError(
                    f"header must read 'p {FORMAT_TAG} <n> <m>'", line_number
                )
            n = _integer(fields[1], "variable count", line_number)
            m = _integer(fields[2], "row count", line_number)
            if n < 0 or m < 0:
                raise InstanceParseError("counts must be non-negative", line_number)
            header = (n, m)
        elif header is None:
            raise InstanceParseError("expected the 'p' header first", line_number)
        elif kind == "d":
            fields = body.split()
            if len(fields) != 3:
                raise InstanceParseError(
                    "declaration must read 'd <j> <l> <u>'", line_number
                )
            j = _integer(fields[0], "variable id", line_number)
            lower = _integer(fields[1], "lower bound", line_number)
            upper = _integer(fields[2], "upper bound", line_number)
            if j < 1:
                raise InstanceParseError(f"variable id {j} must be >= 1", line_number)
            if j in declared:
                raise InstanceParseError(f"duplicate declaration of x{j}", line_number)
            if lower > upper:
                raise InstanceParseError(
                    f"x{j} has an empty domain [{lower}, {upper}]", line_number
                )
            declared[j] = (lower, upper)
        elif kind == "r":
            row_lines += 1
            rows += _parse_row(body, declared, line_number)
        else:
            raise InstanceParseError(f"unknown line type {kind!r}", line_number)

    if header is None:
        raise InstanceParseError("missing 'p' header")
    n, m = header
    if len(declared) != n:
        raise InstanceParseError(
            f"header declares {n} variables, found {len(declared)}"
        )
    if row_lines != m:
        raise InstanceParseError(f"header declares {m} rows, found {row_lines}")
    return System.build(rows, declared)


def _render_row(row: Row) -> str:
    terms = " ".join(f"{a}*x{j}" for j, a in row.terms)
    return f"r {terms} <= {row.rhs}" if terms else f"r <= {row.rhs}"


def render(system: System, comments: Iterable[str] = ()) -> str:
    """Render a system as instance text.

    Rows are written in ascending id order and renumbered from 1.

    :param system: the system.
    :param comments: lines to write as leading ``#`` comments.
    :return: the instance text, newline terminated.
    """
    lines = [f"# {comment}" if comment else "#" for comment in comments]
    lines.append(f"p {FORMAT_TAG} {len(system.variables)} {len(system.rows)}")
    lines += [
        f"d {j} {system.lower[j]} {system.upper[j]}" for j in sorted(system.variables)
    ]
    lines += [_render_row(system.rows[i]) for i in sorted(system.rows)]
    return "\n".join(lines) + "\n"


def read_instance(path: str) -> System:
    """Read an instance file.

    :param path: path of the file.
    :return: the system.
    :raises: OSError if the file cannot be read.
    :raises: InstanceParseError if the file is malformed.
    """
    with open(path, "r", encoding="UTF-8") as file:
        return parse(file.read())


def write_instance(path: str, system: System, comments: Iterable[str] = ()) -> None:
    """Write an instance file.

    :param path: path of the file.
    :param system: the system.
    :param comments: lines to write as leading ``#`` comments.
    :raises: OSError if the file cannot be written.
    """
    with open(path, "w", encoding="UTF-8") as file:
        file.write(render(system, comments))
