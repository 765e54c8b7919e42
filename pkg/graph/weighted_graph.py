"""
Weighted undirected graph and partition types.

Nodes are dense integer ids 0..node_count-1 so a node id doubles as a
Laplacian row index. Edges are stored once, as (u, v) with u < v, in sorted
order; the weight vector is aligned with that order. Graph values are
immutable: every mutation returns a new graph.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _csgraph_components

from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

NodeId = int
Edge = Tuple[NodeId, NodeId]


def normalize_edge(u: NodeId, v: NodeId) -> Edge:
    """Return the canonical (smaller, larger) form of an undirected pair."""
    u, v = int(u), int(v)
    if u == v:
        raise InvalidArgumentError(f"Self-loop ({u}, {v}) is not allowed")
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """
    Undirected simple graph with strictly positive edge weights.

    Args:
        node_count: Number of nodes; every id in 0..node_count-1 exists
        edges: Iterable of (u, v, w) triples, each unordered pair at most once

    Raises:
        InvalidArgumentError: on out-of-range ids, self-loops, duplicate pairs,
            or weights that are not finite and strictly positive
    """

    __slots__ = ("_node_count", "_edges", "_weights", "_index")

    def __init__(self, node_count: int, edges: Iterable[Tuple[int, int, float]] = ()):
        if int(node_count) != node_count or node_count < 0:
            raise InvalidArgumentError(f"node_count must be a non-negative integer, got {node_count}")
        self._node_count = int(node_count)

        weights_by_edge: Dict[Edge, float] = {}
        for u, v, w in edges:
            self._check_node(u)
            self._check_node(v)
            edge = normalize_edge(u, v)
            if edge in weights_by_edge:
                raise InvalidArgumentError(f"Duplicate edge {edge}")
            w = float(w)
            if not np.isfinite(w) or w <= 0.0:
                raise InvalidArgumentError(f"Edge {edge} has non-positive or non-finite weight {w}")
            weights_by_edge[edge] = w

        ordered = sorted(weights_by_edge)
        self._edges: Tuple[Edge, ...] = tuple(ordered)
        self._weights = np.array([weights_by_edge[e] for e in ordered], dtype=float)
        self._weights.setflags(write=False)
        self._index: Dict[Edge, int] = {e: i for i, e in enumerate(ordered)}

    # ----- construction helpers -----

    @classmethod
    def _from_parts(cls, node_count: int, edges: Tuple[Edge, ...], weights: np.ndarray) -> "WeightedGraph":
        """Build from already validated, sorted parts without re-checking."""
        graph = cls.__new__(cls)
        graph._node_count = node_count
        graph._edges = edges
        graph._weights = np.array(weights, dtype=float)
        graph._weights.setflags(write=False)
        graph._index = {e: i for i, e in enumerate(edges)}
        return graph

    def with_weights(self, weights: Sequence[float]) -> "WeightedGraph":
        """
        Return a graph with the same edge set and new weights.

        Args:
            weights: One weight per edge, aligned with ``self.edges``
        """
        new_weights = np.asarray(weights, dtype=float)
        if new_weights.shape != (len(self._edges),):
            raise InvalidArgumentError(
                f"Expected {len(self._edges)} weights, got shape {new_weights.shape}"
            )
        if new_weights.size and (not np.all(np.isfinite(new_weights)) or np.any(new_weights <= 0.0)):
            raise InvalidArgumentError("All edge weights must be finite and strictly positive")
        return WeightedGraph._from_parts(self._node_count, self._edges, new_weights)

    def _check_node(self, i: int) -> None:
        if int(i) != i or not 0 <= i < self._node_count:
            raise InvalidArgumentError(f"Node id {i} out of range 0..{self._node_count - 1}")

    # ----- read access -----

    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """Canonical edges in sorted order."""
        return self._edges

    @property
    def weights(self) -> np.ndarray:
        """Read-only weight vector aligned with ``edges``."""
        return self._weights

    @property
    def total_weight(self) -> float:
        return float(self._weights.sum())

    def has_edge(self, u: int, v: int) -> bool:
        try:
            return normalize_edge(u, v) in self._index
        except InvalidArgumentError:
            return False

    def weight(self, u: int, v: int) -> float:
        edge = normalize_edge(u, v)
        if edge not in self._index:
            raise InvalidArgumentError(f"Edge {edge} is not in the graph")
        return float(self._weights[self._index[edge]])

    def edge_index(self, u: int, v: int) -> int:
        """Position of edge (u, v) in ``edges``."""
        edge = normalize_edge(u, v)
        if edge not in self._index:
            raise InvalidArgumentError(f"Edge {edge} is not in the graph")
        return self._index[edge]

    def iter_edges(self) -> Iterator[Tuple[int, int, float]]:
        for (u, v), w in zip(self._edges, self._weights):
            yield u, v, float(w)

    def endpoints(self) -> Tuple[np.ndarray, np.ndarray]:
        """Arrays (us, vs) of edge endpoints aligned with ``edges``."""
        if not self._edges:
            empty = np.zeros(0, dtype=int)
            return empty, empty.copy()
        pairs = np.asarray(self._edges, dtype=int)
        return pairs[:, 0], pairs[:, 1]

    def adjacency_matrix(self) -> np.ndarray:
        """Dense symmetric weight matrix W with W[u, v] = w_uv."""
        n = self._node_count
        matrix = np.zeros((n, n), dtype=float)
        us, vs = self.endpoints()
        matrix[us, vs] = self._weights
        matrix[vs, us] = self._weights
        return matrix

    def sparse_adjacency(self) -> csr_matrix:
        n = self._node_count
        us, vs = self.endpoints()
        data = np.concatenate([self._weights, self._weights])
        rows = np.concatenate([us, vs])
        cols = np.concatenate([vs, us])
        return csr_matrix((data, (rows, cols)), shape=(n, n))

    # ----- value semantics -----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self._node_count == other._node_count
            and self._edges == other._edges
            and np.array_equal(self._weights, other._weights)
        )

    def __hash__(self) -> int:
        return hash((self._node_count, self._edges, self._weights.tobytes()))

    def __repr__(self) -> str:
        return f"WeightedGraph(node_count={self._node_count}, edge_count={self.edge_count})"


@dataclass(frozen=True, eq=False)
class Partition:
    """
    Community label per node.

    Labels carry equality semantics only: two partitions are equal when they
    group the nodes the same way, whatever the label values.
    """

    assignment: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(label) for label in self.assignment))

    def __len__(self) -> int:
        return len(self.assignment)

    def __iter__(self) -> Iterator[int]:
        return iter(self.assignment)

    def __getitem__(self, node: int) -> int:
        return self.assignment[node]

    @property
    def community_count(self) -> int:
        return len(set(self.assignment))

    def canonical(self) -> Tuple[int, ...]:
        """Labels renumbered 0, 1, 2, ... in order of first appearance."""
        relabel: Dict[int, int] = {}
        return tuple(relabel.setdefault(label, len(relabel)) for label in self.assignment)

    def communities(self) -> List[FrozenSet[int]]:
        """Node sets, ordered by their smallest member."""
        groups: Dict[int, List[int]] = {}
        for node, label in enumerate(self.canonical()):
            groups.setdefault(label, []).append(node)
        return [frozenset(groups[label]) for label in sorted(groups)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())


def weighted_degree(g: WeightedGraph, i: int) -> float:
    """
    Sum of the weights of the edges incident to node ``i``.

    Raises:
        InvalidArgumentError: if ``i`` is not a node of ``g``
    """
    g._check_node(i)
    return float(weighted_degrees(g)[i])


def weighted_degrees(g: WeightedGraph) -> np.ndarray:
    """Weighted degree of every node; 0 for isolated nodes."""
    degrees = np.zeros(g.node_count, dtype=float)
    us, vs = g.endpoints()
    np.add.at(degrees, us, g.weights)
    np.add.at(degrees, vs, g.weights)
    return degrees


def connected_components(g: WeightedGraph) -> Partition:
    """
    Label nodes by connected component.

    Labels follow the order in which components are discovered from node 0
    upward, so the result is deterministic. Isolated nodes are singletons.
    """
    if g.node_count == 0:
        return Partition(())
    _, labels = _csgraph_components(g.sparse_adjacency(), directed=False)
    return Partition(tuple(int(label) for label in labels))


def component_count(g: WeightedGraph) -> int:
    if g.node_count == 0:
        return 0
    count, _ = _csgraph_components(g.sparse_adjacency(), directed=False)
    return int(count)


def is_connected(g: WeightedGraph) -> bool:
    """True iff the graph has at least one node and a single component."""
    return g.node_count >= 1 and component_count(g) == 1


def remove_edges(g: WeightedGraph, edge_list: Iterable[Tuple[int, int]]) -> WeightedGraph:
    """
    Return a copy of ``g`` without the listed edges; the node set is unchanged.

    Raises:
        InvalidArgumentError: if a listed pair is not an edge of ``g``
    """
    doomed = set()
    for u, v in edge_list:
        edge = normalize_edge(u, v)
        if not g.has_edge(*edge):
            raise InvalidArgumentError(f"Cannot remove {edge}: not an edge of the graph")
        doomed.add(edge)

    keep = np.array([edge not in doomed for edge in g.edges], dtype=bool)
    kept_edges = tuple(edge for edge, k in zip(g.edges, keep) if k)
    logger.debug(f"[GRAPH] Removed {len(doomed)} edges, {len(kept_edges)} remain")
    return WeightedGraph._from_parts(g.node_count, kept_edges, g.weights[keep])
