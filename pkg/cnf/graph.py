"""Induced variable graph and connected components of a formula."""

from typing import FrozenSet, List, Tuple

import networkx as nx

from .clause import Clause
from .formula import AnyFormula


def induced_graph(formula: AnyFormula) -> nx.Graph:
    """Simple undirected graph on n vertices; an edge joins two variables sharing a clause."""
    graph = nx.Graph()
    graph.add_nodes_from(range(formula.n))
    for clause in formula.clauses:
        variables = clause.variables
        for i, u in enumerate(variables):
            for v in variables[i + 1:]:
                graph.add_edge(u, v)
    return graph


def _component_order(component: FrozenSet[int]) -> Tuple[int, Tuple[int, ...]]:
    return (-len(component), tuple(sorted(component)))


def connected_components(formula: AnyFormula) -> List[FrozenSet[int]]:
    """Components over the non-isolated variables, largest first, ties lexicographic."""
    graph = induced_graph(formula)
    graph.remove_nodes_from([v for v in list(graph.nodes) if graph.degree(v) == 0])
    components = [frozenset(c) for c in nx.connected_components(graph)]
    return sorted(components, key=_component_order)


def clause_components(formula: AnyFormula) -> List[Tuple[FrozenSet[int], Tuple[Clause, ...]]]:
    """Group clauses by the component of their variables.

    Unlike connected_components, a variable that only occurs in width-1 clauses
    forms its own singleton component. Every clause lands in exactly one group.
    """
    graph = nx.Graph()
    for clause in formula.clauses:
        variables = clause.variables
        graph.add_node(variables[0])
        for v in variables[1:]:
            graph.add_edge(variables[0], v)
    components = sorted((frozenset(c) for c in nx.connected_components(graph)), key=_component_order)
    owner = {v: i for i, comp in enumerate(components) for v in comp}
    grouped: List[List[Clause]] = [[] for _ in components]
    for clause in formula.clauses:
        grouped[owner[clause.variables[0]]].append(clause)
    return [(comp, tuple(clauses)) for comp, clauses in zip(components, grouped)]
