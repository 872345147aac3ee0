"""
Unit tests for symmetric closures, union and join
"""

import networkx as nx
import pytest

from digraph_cyclability.exceptions import InvalidDigraphError
from digraph_cyclability.modules.symmetric import (
    graph_from_edges,
    join,
    symmetric_closure,
    symmetric_closure_of,
    union,
)


@pytest.mark.unit
def test_closure_doubles_edges():
    """Test every edge becomes two opposite arcs"""
    digraph = symmetric_closure_of(3, [(0, 1), (1, 2)])
    assert digraph.arc_count == 4
    assert digraph.has_arc(0, 1) and digraph.has_arc(1, 0)
    assert not digraph.has_arc(0, 2)


@pytest.mark.unit
def test_closure_relabels_sorted():
    """Test non-integer nodes are relabelled in sorted order"""
    graph = nx.Graph([("b", "c")])
    graph.add_node("a")
    digraph = symmetric_closure(graph)
    assert digraph.n == 3
    assert list(digraph.arcs()) == [(1, 2), (2, 1)]


@pytest.mark.unit
def test_loop_rejected():
    """Test loops in the edge list are refused"""
    with pytest.raises(InvalidDigraphError):
        graph_from_edges(3, [(1, 1)])
    with pytest.raises(InvalidDigraphError):
        graph_from_edges(3, [(0, 5)])


@pytest.mark.unit
def test_union_keeps_parts_apart():
    """Test K2 + K2 union has no edges between parts"""
    digraph = symmetric_closure(union(nx.complete_graph(2), nx.complete_graph(2)))
    assert digraph.n == 4
    assert digraph.arc_count == 4
    assert not digraph.has_arc(1, 2)


@pytest.mark.unit
def test_join_adds_all_cross_edges():
    """Test K2 joined with an independent set of 3 vertices"""
    joined = join(nx.complete_graph(2), nx.empty_graph(3))
    assert joined.number_of_nodes() == 5
    assert joined.number_of_edges() == 1 + 2 * 3
    assert joined.has_edge(0, 4)
    assert not joined.has_edge(2, 3)
