"""Standard graph families used by tests and examples."""
import itertools
from typing import List, Optional, Tuple

import numpy as np

from graph.weighted_graph import WeightedGraph
from utils.errors import InvalidArgumentError


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(n, ((u, v, weight) for u, v in itertools.combinations(range(n), 2)))


def path_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(n, ((i, i + 1, weight) for i in range(n - 1)))


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise InvalidArgumentError(f"A simple cycle needs at least 3 nodes, got {n}")
    return WeightedGraph(n, ((i, (i + 1) % n, weight) for i in range(n)))


def complete_bipartite_graph(a: int, b: int, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(a + b, ((u, a + v, weight) for u in range(a) for v in range(b)))


def joined_cliques(
    clique_sizes: List[int],
    weight: float = 1.0,
    bridge_weight: Optional[float] = None,
) -> Tuple[WeightedGraph, List[int]]:
    """
    Cliques laid out consecutively, each joined to the next by one bridge edge.

    The bridge runs from the last node of clique i to the first node of clique i+1.

    Returns:
        (graph, clique label per node)
    """
    bridge_weight = weight if bridge_weight is None else bridge_weight
    edges = []
    labels: List[int] = []
    start = 0
    for index, size in enumerate(clique_sizes):
        members = range(start, start + size)
        edges.extend((u, v, weight) for u, v in itertools.combinations(members, 2))
        if index > 0:
            edges.append((start - 1, start, bridge_weight))
        labels.extend([index] * size)
        start += size
    return WeightedGraph(start, edges), labels


def random_connected_graph(
    n: int,
    rng: np.random.Generator,
    extra_edge_probability: float = 0.2,
    weight_range: Tuple[float, float] = (0.1, 5.0),
) -> WeightedGraph:
    """
    Random spanning tree plus independent extra edges, uniform random weights.

    Args:
        n: Node count (>= 1)
        rng: numpy Generator that drives every random choice
        extra_edge_probability: Chance that each non-tree pair becomes an edge
        weight_range: Uniform weight interval, both ends positive
    """
    if n < 1:
        raise InvalidArgumentError("random_connected_graph needs at least one node")
    low, high = weight_range
    order = rng.permutation(n)
    pairs = set()
    for position in range(1, n):
        parent = order[rng.integers(0, position)]
        u, v = int(order[position]), int(parent)
        pairs.add((min(u, v), max(u, v)))
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in pairs and rng.random() < extra_edge_probability:
            pairs.add((u, v))
    ordered = sorted(pairs)
    weights = rng.uniform(low, high, size=len(ordered))
    return WeightedGraph(n, ((u, v, w) for (u, v), w in zip(ordered, weights)))
