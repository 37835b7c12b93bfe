# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides unit tests for the primal graph and branching."""

import itertools
from fractions import Fraction

import networkx as nx
import pytest

from ska_ilc_counter.core import Row, System
from ska_ilc_counter.graph import (
    Component,
    PrimalGraph,
    SelectionMode,
    betweenness_scores,
    build_primal_graph,
    decompose,
    select_variable,
)


@pytest.fixture(name="path")
def path_fixture() -> System:
    """
    Fixture to return a system whose primal graph is the path 1 - 2 - 3.

    :return: the system.
    """
    return System.build(
        [Row.from_terms({1: 1, 2: 1}, 1), Row.from_terms({2: 1, 3: 1}, 1)],
        {1: (0, 1), 2: (0, 1), 3: (0, 1)},
    )


def _naive_betweenness(graph: nx.Graph) -> dict[int, Fraction]:
    """Count shortest paths through each vertex, pair by pair."""
    scores = {v: Fraction(0) for v in graph.nodes}
    for source, target in itertools.combinations(sorted(graph.nodes), 2):
        if not nx.has_path(graph, source, target):
            continue
        paths = list(nx.all_shortest_paths(graph, source, target))
        for v in graph.nodes:
            if v in (source, target):
                continue
            through = sum(1 for path in paths if v in path)
            scores[v] += Fraction(through, len(paths))
    return scores


class TestPrimalGraph:
    """Test building the primal graph."""

    def test_example_is_triangle(self, example: System) -> None:
        """Test every pair of example variables shares a row.

        :param example: the worked example.
        """
        graph = build_primal_graph(example)
        assert graph.vertices == [1, 2, 3]
        assert graph.adjacency == {1: [2, 3], 2: [1, 3], 3: [1, 2]}
        assert graph.degree(1) == 2

    def test_isolated_variable(self) -> None:
        """Test a variable in no row is an isolated vertex."""
        system = System.build(
            [Row.from_terms({1: 1, 2: 1}, 1)], {1: (0, 1), 2: (0, 1), 3: (0, 1)}
        )
        graph = build_primal_graph(system)
        assert graph.adjacency[3] == []
        assert graph.components() == [[1, 2], [3]]


class TestDecompose:
    """Test splitting a system into independent components."""

    def test_components_and_rows(self) -> None:
        """Test variables and rows are assigned to their component."""
        system = System.build(
            {
                1: Row.from_terms({3: 1, 4: 1}, 1),
                2: Row.from_terms({1: 1, 2: -1}, 0),
                3: Row.from_terms({4: 2}, 1),
            },
            {j: (0, 2) for j in range(1, 6)},
        )
        assert decompose(system) == [
            Component(frozenset({1, 2}), frozenset({2})),
            Component(frozenset({3, 4}), frozenset({1, 3})),
            Component(frozenset({5}), frozenset()),
        ]

    def test_connected_system(self, example: System) -> None:
        """Test a connected system is a single component.

        :param example: the worked example.
        """
        assert decompose(example) == [
            Component(frozenset({1, 2, 3}), frozenset({1, 2, 3, 4}))
        ]


class TestBetweenness:
    """Test exact betweenness centrality."""

    def test_triangle(self, example: System) -> None:
        """Test no vertex of a triangle lies between the others.

        :param example: the worked example.
        """
        scores = betweenness_scores(build_primal_graph(example))
        assert scores == {1: 0, 2: 0, 3: 0}

    def test_path(self, path: System) -> None:
        """Test the middle of a path.

        :param path: system whose graph is a path.
        """
        scores = betweenness_scores(build_primal_graph(path))
        assert scores == {1: 0, 2: 1, 3: 0}

    def test_split_paths(self) -> None:
        """Test a pair joined by two shortest paths credits each half."""
        graph = PrimalGraph(nx.cycle_graph(4))
        assert betweenness_scores(graph) == {v: Fraction(1, 2) for v in range(4)}

    @pytest.mark.parametrize("seed", range(200))
    def test_matches_naive_count(self, seed: int) -> None:
        """Test against counting shortest paths directly on random graphs.

        :param seed: seed of the random graph.
        """
        graph = nx.gnp_random_graph(2 + seed % 7, 0.35, seed=seed)
        scores = betweenness_scores(PrimalGraph(graph))
        assert scores == _naive_betweenness(graph)
        reference = nx.betweenness_centrality(graph, normalized=False)
        assert {v: float(s) for v, s in scores.items()} == pytest.approx(reference)


class TestSelectVariable:
    """Test the branching heuristics."""

    def test_triangle_ties(self, example: System) -> None:
        """Test all-zero scores fall back to the smallest id of largest degree.

        :param example: the worked example.
        """
        assert select_variable(example) == 1

    @pytest.mark.parametrize(
        "mode,expected",
        [
            pytest.param(SelectionMode.BETWEENNESS, 2, id="betweenness"),
            pytest.param(SelectionMode.DEGREE, 2, id="degree"),
            pytest.param(SelectionMode.FIRST, 1, id="first"),
        ],
    )
    def test_path(self, path: System, mode: SelectionMode, expected: int) -> None:
        """Test each heuristic on a path.

        :param path: system whose graph is a path.
        :param mode: the heuristic.
        :param expected: the chosen variable.
        """
        assert select_variable(path, mode) == expected

    def test_highest_score_wins(self) -> None:
        """Test the vertex with the highest score is chosen."""
        # Triangle 1-2-3 plus a tail 3-4-5: vertex 3 scores highest.
        system = System.build(
            [
                Row.from_terms({1: 1, 2: 1, 3: 1}, 1),
                Row.from_terms({3: 1, 4: 1}, 1),
                Row.from_terms({4: 1, 5: 1}, 1),
            ],
            {j: (0, 1) for j in range(1, 6)},
        )
        scores = betweenness_scores(build_primal_graph(system))
        assert scores[3] == 4
        assert scores[4] == 3
        assert select_variable(system) == 3
