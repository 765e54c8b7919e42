"""networkx interop with dense relabelling."""
from typing import Dict, Hashable, List, Tuple

import networkx as nx

from graph.weighted_graph import WeightedGraph
from utils.errors import InvalidArgumentError


def to_networkx(g: WeightedGraph, weight: str = "weight") -> nx.Graph:
    """Copy ``g`` into an ``nx.Graph`` with integer nodes and a weight attribute."""
    graph = nx.Graph()
    graph.add_nodes_from(range(g.node_count))
    graph.add_weighted_edges_from(g.iter_edges(), weight=weight)
    return graph


def from_networkx(graph: nx.Graph, weight: str = "weight") -> Tuple[WeightedGraph, List[Hashable]]:
    """
    Convert an undirected networkx graph, relabelling nodes to 0..n-1.

    Nodes are numbered in ``graph.nodes`` order; edges without the weight
    attribute get weight 1.

    Returns:
        (weighted graph, id table mapping dense id -> original node)
    """
    if graph.is_directed() or graph.is_multigraph():
        raise InvalidArgumentError("Only simple undirected graphs are supported")
    id_table: List[Hashable] = list(graph.nodes)
    dense: Dict[Hashable, int] = {node: i for i, node in enumerate(id_table)}
    edges = [
        (dense[u], dense[v], data.get(weight, 1.0))
        for u, v, data in graph.edges(data=True)
    ]
    return WeightedGraph(len(id_table), edges), id_table
