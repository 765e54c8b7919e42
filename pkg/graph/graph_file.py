"""
Plain-text graph file format.

    nodes <n>
    <u> <v> <w>          one line per edge, u < v, w > 0
    ...
    partition <l_0> <l_1> ... <l_{n-1}>     optional, last line

Blank lines and lines starting with '#' are ignored on read. Weights are
written with 17 significant digits so write-then-read returns equal weights.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from graph.weighted_graph import Partition, WeightedGraph, normalize_edge
from utils.errors import GraphFileError, InvalidArgumentError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class GraphFile:
    """A parsed graph file: the graph and, optionally, planted labels."""

    graph: WeightedGraph
    partition: Optional[Partition] = None


def parse_graph_file(text: str) -> GraphFile:
    """
    Parse graph file text.

    Raises:
        GraphFileError: on malformed lines, duplicate edges, self-loops,
            out-of-range ids, non-positive weights or a bad partition line
    """
    node_count: Optional[int] = None
    edges: List[Tuple[int, int, float]] = []
    seen = set()
    partition: Optional[Partition] = None

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()

        if node_count is None:
            if fields[0] != "nodes" or len(fields) != 2:
                raise GraphFileError("expected header 'nodes <n>'", line_number)
            node_count = _parse_int(fields[1], line_number)
            if node_count < 1:
                raise GraphFileError(f"node count must be positive, got {node_count}", line_number)
            continue

        if partition is not None:
            raise GraphFileError("the partition line must be the last line", line_number)

        if fields[0] == "partition":
            labels = [_parse_int(field, line_number) for field in fields[1:]]
            if len(labels) != node_count:
                raise GraphFileError(
                    f"partition has {len(labels)} labels for {node_count} nodes", line_number
                )
            partition = Partition(tuple(labels))
            continue

        if len(fields) != 3:
            raise GraphFileError(f"expected 'u v w', got {line!r}", line_number)
        u = _parse_int(fields[0], line_number)
        v = _parse_int(fields[1], line_number)
        try:
            w = float(fields[2])
        except ValueError:
            raise GraphFileError(f"invalid weight {fields[2]!r}", line_number) from None
        try:
            edge = normalize_edge(u, v)
        except InvalidArgumentError as e:
            raise GraphFileError(str(e), line_number) from None
        if edge in seen:
            raise GraphFileError(f"duplicate edge {edge}", line_number)
        seen.add(edge)
        edges.append((u, v, w))

    if node_count is None:
        raise GraphFileError("missing 'nodes <n>' header")

    try:
        graph = WeightedGraph(node_count, edges)
    except InvalidArgumentError as e:
        raise GraphFileError(str(e)) from None
    return GraphFile(graph=graph, partition=partition)


def format_graph_file(graph: WeightedGraph, partition: Optional[Partition] = None) -> str:
    """Serialize a graph (and optional planted partition) to graph file text."""
    lines = [f"nodes {graph.node_count}"]
    lines.extend(f"{u} {v} {w:.17g}" for u, v, w in graph.iter_edges())
    if partition is not None:
        if len(partition) != graph.node_count:
            raise InvalidArgumentError(
                f"partition length {len(partition)} != node count {graph.node_count}"
            )
        lines.append("partition " + " ".join(str(label) for label in partition.assignment))
    return "\n".join(lines) + "\n"


def read_graph_file(path: PathLike) -> GraphFile:
    """
    Raises:
        GraphFileError: if the file is not UTF-8 text or does not parse
        OSError: if the file cannot be read
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise GraphFileError(f"not UTF-8 text at byte {e.start}") from None
    parsed = parse_graph_file(text)
    logger.info(
        f"[GRAPH] Read {path}: {parsed.graph.node_count} nodes, {parsed.graph.edge_count} edges"
        f"{', planted partition' if parsed.partition is not None else ''}"
    )
    return parsed


def write_graph_file(path: PathLike, graph: WeightedGraph, partition: Optional[Partition] = None) -> None:
    Path(path).write_text(format_graph_file(graph, partition), encoding="utf-8")
    logger.info(f"[GRAPH] Wrote {path}: {graph.node_count} nodes, {graph.edge_count} edges")


def _parse_int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFileError(f"invalid integer {token!r}", line_number) from None
