"""
Symmetric Closures of Undirected Graphs
Builds G* digraphs (every edge replaced by both arcs) from networkx graphs,
with the union and join operations the extremal families are written in
"""

import logging
from typing import Iterable, Tuple

try:
    import networkx as nx
except ImportError:
    nx = None
    logging.warning("NetworkX not installed. Install with: pip install networkx")

from ..exceptions import InvalidDigraphError
from .digraph import Digraph, DigraphBuilder

logger = logging.getLogger(__name__)


def _require_networkx() -> None:
    if nx is None:
        raise ImportError("NetworkX is required. Install with: pip install networkx")


def graph_from_edges(n: int, edges: Iterable[Tuple[int, int]]):
    """
    Simple undirected graph on 0..n-1

    Raises:
        InvalidDigraphError: on a loop or an endpoint outside 0..n-1
    """
    _require_networkx()
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for u, v in edges:
        if u == v:
            raise InvalidDigraphError(f"Loop {u}-{v} in undirected edge list")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidDigraphError(f"Edge {u}-{v} leaves 0..{n - 1}")
        graph.add_edge(u, v)
    return graph


def symmetric_closure(graph) -> Digraph:
    """
    G* of an undirected graph

    Nodes are relabelled 0..|G|-1 in sorted order when they are not already
    integers in that range.
    """
    _require_networkx()
    if nx.number_of_selfloops(graph):
        raise InvalidDigraphError("Symmetric closure of a graph with loops")

    graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    builder = DigraphBuilder(graph.number_of_nodes())
    for u, v in graph.edges():
        builder.add_symmetric(u, v)

    logger.debug(f"Symmetric closure: {graph.number_of_nodes()} vertices, "
                 f"{graph.number_of_edges()} edges")
    return builder.freeze()


def symmetric_closure_of(n: int, edges: Iterable[Tuple[int, int]]) -> Digraph:
    """G* straight from an edge list"""
    return symmetric_closure(graph_from_edges(n, edges))


def union(first, second):
    """Disjoint union; vertices of `second` follow those of `first`"""
    _require_networkx()
    return nx.disjoint_union(first, second)


def join(first, second):
    """
    G1 + G2: disjoint union plus every edge between the two parts

    Vertices of `first` keep ids 0..|G1|-1, those of `second` follow.
    """
    _require_networkx()
    offset = first.number_of_nodes()
    joined = nx.disjoint_union(first, second)
    joined.add_edges_from(
        (u, offset + v)
        for u in range(offset)
        for v in range(second.number_of_nodes())
    )
    return joined
