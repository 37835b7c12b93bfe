# -*- coding: utf-8 -*-
#
# This file is part of the SKA ILC Counter project
#
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""This module provides the primal graph, component decomposition and branching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

import networkx as nx

from ska_ilc_counter.core import System


class SelectionMode(Enum):
    """Enumeration type for the branching variable heuristics."""

    BETWEENNESS = "betweenness"
    DEGREE = "degree"
    FIRST = "first"


class PrimalGraph:
    """Undirected graph on variables, joined when they share a row."""

    def __init__(self, graph: nx.Graph) -> None:
        """Wrap a networkx graph.

        :param graph: graph whose nodes are variable ids.
        """
        self._graph = graph

    @property
    def vertices(self) -> list[int]:
        """Variable ids, ascending."""
        return sorted(self._graph.nodes)

    @property
    def adjacency(self) -> dict[int, list[int]]:
        """Sorted neighbour list of each vertex."""
        return {v: sorted(self._graph.adj[v]) for v in self.vertices}

    @property
    def graph(self) -> nx.Graph:
        """The underlying networkx graph."""
        return self._graph

    def degree(self, vertex: int) -> int:
        """Return the number of neighbours of a vertex."""
        return int(self._graph.degree[vertex])

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        return sorted(
            (sorted(component) for component in nx.connected_components(self._graph)),
            key=lambda component: component[0],
        )


@dataclass(frozen=True)
class Component:
    """Variables ``N_i`` and rows ``M_i`` of one independent subsystem."""

    variables: frozenset[int]
    rows: frozenset[int]


Partition = list[Component]


def build_primal_graph(system: System) -> PrimalGraph:
    """Build the primal graph of a system.

    :param system: the system.
    :return: the graph; variables in no row are isolated vertices.
    """
    graph = nx.Graph()
    graph.add_nodes_from(sorted(system.variables))
    for row in system.rows.values():
        graph.add_edges_from(combinations(row.support, 2))
    return PrimalGraph(graph)


def decompose(system: System) -> Partition:
    """Split a system along the connected components of its primal graph.

    :param system: an open system without empty-support rows.
    :return: one component per connected component, by smallest variable id.
    """
    components = build_primal_graph(system).components()
    owner = {j: index for index, component in enumerate(components) for j in component}
    rows: list[set[int]] = [set() for _ in components]
    for i, row in system.rows.items():
        if row.terms:
            rows[owner[row.terms[0][0]]].add(i)
    return [
        Component(frozenset(component), frozenset(component_rows))
        for component, component_rows in zip(components, rows)
    ]


def betweenness_scores(graph: PrimalGraph) -> dict[int, Fraction]:
    """Compute exact betweenness centrality with Brandes' accumulation.

    Each unordered source/target pair is counted once.

    :param graph: the primal graph.
    :return: the score of every vertex.
    """
    adjacency = graph.adjacency
    scores = {v: Fraction(0) for v in adjacency}
    for source in adjacency:
        stack: list[int] = []
        predecessors: dict[int, list[int]] = {v: [] for v in adjacency}
        sigma = {v: 0 for v in adjacency}
        distance = {v: -1 for v in adjacency}
        sigma[source] = 1
        distance[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adjacency[v]:
                if distance[w] < 0:
                    queue.append(w)
                    distance[w] = distance[v] + 1
                if distance[w] == distance[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append(v)

        dependency = {v: Fraction(0) for v in adjacency}
        while stack:
            w = stack.pop()
            for v in predecessors[w]:
                dependency[v] += Fraction(sigma[v], sigma[w]) * (1 + dependency[w])
            if w != source:
                scores[w] += dependency[w]
    # Every pair was visited from both ends.
    return {v: score / 2 for v, score in scores.items()}


def select_variable(
    system: System, mode: SelectionMode = SelectionMode.BETWEENNESS
) -> int:
    """Pick the variable to branch on.

    :param system: an open system with at least one variable.
    :param mode: the heuristic.
    :return: the variable id.
    """
    graph = build_primal_graph(system)
    vertices = graph.vertices
    if mode is SelectionMode.FIRST:
        return vertices[0]
    if mode is SelectionMode.BETWEENNESS:
        scores = betweenness_scores(graph)
        best = max(scores.values())
        if best > 0:
            return min(v for v in vertices if scores[v] == best)
    return min(vertices, key=lambda v: (-graph.degree(v), v))
