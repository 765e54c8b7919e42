import networkx as nx
import numpy as np
import pytest

from graph.builders import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    joined_cliques,
    path_graph,
    random_connected_graph,
)
from graph.convert import from_networkx, to_networkx
from graph.graph_file import format_graph_file, parse_graph_file, read_graph_file, write_graph_file
from graph.weighted_graph import (
    Partition,
    WeightedGraph,
    component_count,
    connected_components,
    is_connected,
    remove_edges,
    weighted_degree,
    weighted_degrees,
)
from utils.errors import GraphFileError, InvalidArgumentError
from utils.sbm import SbmParams, generate_sbm


# ===== WeightedGraph =====

def test_edges_are_canonical_and_sorted():
    g = WeightedGraph(4, [(3, 1, 2.0), (1, 0, 0.5), (2, 0, 1.0)])
    assert g.edges == ((0, 1), (0, 2), (1, 3))
    assert g.weight(3, 1) == 2.0
    assert g.weight(1, 3) == 2.0
    assert g.total_weight == pytest.approx(3.5)


@pytest.mark.parametrize(
    "edges",
    [
        [(0, 0, 1.0)],
        [(0, 1, 1.0), (1, 0, 2.0)],
        [(0, 1, 0.0)],
        [(0, 1, -1.0)],
        [(0, 1, float("nan"))],
        [(0, 1, float("inf"))],
        [(0, 3, 1.0)],
    ],
)
def test_invalid_edges_rejected(edges):
    with pytest.raises(InvalidArgumentError):
        WeightedGraph(3, edges)


def test_weights_are_read_only(triangle):
    with pytest.raises(ValueError):
        triangle.weights[0] = 5.0


def test_with_weights_keeps_edges(triangle):
    heavier = triangle.with_weights([1.0, 2.0, 3.0])
    assert heavier.edges == triangle.edges
    assert heavier.weight(1, 2) == 3.0
    assert triangle.weight(1, 2) == 1.0
    with pytest.raises(InvalidArgumentError):
        triangle.with_weights([1.0, 0.0, 1.0])
    with pytest.raises(InvalidArgumentError):
        triangle.with_weights([1.0, 1.0])


# ===== weighted_degree =====

def test_weighted_degree_triangle(triangle):
    assert [weighted_degree(triangle, i) for i in range(3)] == [2.0, 2.0, 2.0]


def test_weighted_degree_single_half_edge():
    g = WeightedGraph(2, [(0, 1, 0.5)])
    assert weighted_degree(g, 0) == 0.5


def test_weighted_degree_star_center():
    star = complete_bipartite_graph(1, 4)
    assert weighted_degree(star, 0) == 4.0
    assert weighted_degree(star, 3) == 1.0


def test_weighted_degree_isolated_and_out_of_range():
    g = WeightedGraph(3, [(0, 1, 1.0)])
    assert weighted_degree(g, 2) == 0.0
    with pytest.raises(InvalidArgumentError):
        weighted_degree(g, 3)
    with pytest.raises(InvalidArgumentError):
        weighted_degree(g, -1)


def test_degrees_sum_to_twice_total_weight(rng):
    g = random_connected_graph(25, rng)
    assert weighted_degrees(g).sum() == pytest.approx(2.0 * g.total_weight)


# ===== connected_components / is_connected =====

def test_path_is_one_component(path3):
    assert connected_components(path3).community_count == 1


def test_disjoint_edges_are_two_components():
    g = WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    partition = connected_components(g)
    assert partition == Partition((0, 0, 1, 1))
    assert not is_connected(g)


def test_isolated_nodes_are_singletons():
    g = WeightedGraph(4, [(1, 2, 1.0)])
    assert connected_components(g).communities() == [
        frozenset({0}), frozenset({1, 2}), frozenset({3})
    ]


def test_single_node_is_connected(triangle):
    assert is_connected(WeightedGraph(1))
    assert is_connected(triangle)


def test_components_of_sbm_without_inter_edges_match_blocks():
    graph, planted = generate_sbm(SbmParams(n=30, k=3, p_in=0.9, p_out=0.2, seed=4))
    crossing = [(u, v) for u, v in graph.edges if planted[u] != planted[v]]
    assert crossing
    assert connected_components(remove_edges(graph, crossing)) == planted


def test_components_agree_with_networkx(rng):
    g = random_connected_graph(30, rng, extra_edge_probability=0.05)
    g = remove_edges(g, g.edges[::3])
    expected = list(nx.connected_components(to_networkx(g)))
    assert component_count(g) == len(expected)
    ours = connected_components(g)
    for component in expected:
        assert len({ours[node] for node in component}) == 1


# ===== remove_edges =====

def test_triangle_minus_edge_is_path(triangle):
    assert remove_edges(triangle, [(2, 0)]) == path_graph(3)


def test_remove_all_edges_keeps_nodes(triangle):
    emptied = remove_edges(triangle, triangle.edges)
    assert emptied.node_count == 3
    assert emptied.edge_count == 0


def test_removing_bridge_disconnects(two_k6):
    graph, _ = two_k6
    assert is_connected(graph)
    assert not is_connected(remove_edges(graph, [(5, 6)]))


def test_removing_missing_edge_fails(path3):
    with pytest.raises(InvalidArgumentError):
        remove_edges(path3, [(0, 2)])


# ===== Partition =====

def test_partition_equality_ignores_label_names():
    assert Partition((0, 0, 1, 1)) == Partition((7, 7, 3, 3))
    assert Partition((0, 0, 1, 1)) != Partition((0, 1, 0, 1))
    assert hash(Partition((5, 5, 2))) == hash(Partition((0, 0, 1)))
    assert Partition((4, 4, 9)).canonical() == (0, 0, 1)


# ===== builders =====

def test_builder_sizes():
    assert complete_graph(5).edge_count == 10
    assert cycle_graph(8).edge_count == 8
    assert complete_bipartite_graph(3, 3).edge_count == 9
    graph, labels = joined_cliques([4, 4, 4], bridge_weight=3.0)
    assert graph.edge_count == 3 * 6 + 2
    assert graph.weight(3, 4) == 3.0
    assert labels == [0] * 4 + [1] * 4 + [2] * 4
    with pytest.raises(InvalidArgumentError):
        cycle_graph(2)


def test_random_connected_graph_is_connected(rng):
    for n in (1, 2, 5, 40):
        assert is_connected(random_connected_graph(n, rng))


# ===== networkx interop =====

def test_networkx_round_trip(rng):
    g = random_connected_graph(12, rng)
    back, ids = from_networkx(to_networkx(g))
    assert back == g
    assert ids == list(range(12))


def test_from_networkx_relabels_string_nodes():
    source = nx.Graph()
    source.add_edge("b", "a", weight=2.5)
    source.add_edge("a", "c")
    g, ids = from_networkx(source)
    assert ids == ["b", "a", "c"]
    assert g.weight(0, 1) == 2.5
    assert g.weight(1, 2) == 1.0


def test_from_networkx_rejects_directed():
    with pytest.raises(InvalidArgumentError):
        from_networkx(nx.DiGraph([(0, 1)]))


# ===== graph file =====

def test_graph_file_round_trip(tmp_path, rng):
    g = random_connected_graph(10, rng)
    partition = Partition(tuple(i % 3 for i in range(10)))
    path = tmp_path / "g.txt"
    write_graph_file(path, g, partition)
    parsed = read_graph_file(path)
    assert parsed.graph == g
    assert parsed.partition == partition
    assert format_graph_file(parsed.graph, parsed.partition) == path.read_text()


def test_graph_file_parses_comments_and_reversed_pairs():
    text = "# two edges\nnodes 3\n\n2 1 0.25\n0 1 1\npartition 0 0 1\n"
    parsed = parse_graph_file(text)
    assert parsed.graph.edges == ((0, 1), (1, 2))
    assert parsed.graph.weight(1, 2) == 0.25
    assert parsed.partition == Partition((0, 0, 1))


def test_graph_file_without_partition():
    assert parse_graph_file("nodes 2\n0 1 1.5\n").partition is None


@pytest.mark.parametrize(
    "text, line",
    [
        ("0 1 1.0\n", 1),
        ("nodes 3\n0 1 1.0\n1 0 2.0\n", 3),
        ("nodes 3\n1 1 1.0\n", 2),
        ("nodes 3\n0 1\n", 2),
        ("nodes 3\n0 1 abc\n", 2),
        ("nodes 3\n0 1 1.0\npartition 0 1\n", 3),
        ("nodes 3\npartition 0 1 1\n0 1 1.0\n", 3),
        ("nodes x\n", 1),
    ],
)
def test_graph_file_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFileError) as excinfo:
        parse_graph_file(text)
    assert excinfo.value.line_number == line


def test_graph_file_rejects_bad_weight_and_missing_header():
    with pytest.raises(GraphFileError):
        parse_graph_file("nodes 2\n0 1 -1\n")
    with pytest.raises(GraphFileError):
        parse_graph_file("# nothing here\n")


def test_graph_file_rejects_non_utf8_bytes(tmp_path):
    path = tmp_path / "binary.txt"
    path.write_bytes(b"nodes 3\n0 1 \xff\xfe\n")
    with pytest.raises(GraphFileError, match="UTF-8"):
        read_graph_file(path)


def test_graph_file_keeps_seventeen_digits():
    g = WeightedGraph(2, [(0, 1, 0.1 + 0.2)])
    assert parse_graph_file(format_graph_file(g)).graph.weight(0, 1) == 0.1 + 0.2
    assert np.isclose(g.weight(0, 1), 0.3)
