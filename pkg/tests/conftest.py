import numpy as np
import pytest

from graph.builders import complete_graph, joined_cliques, path_graph
from graph.weighted_graph import WeightedGraph


@pytest.fixture
def triangle() -> WeightedGraph:
    return complete_graph(3)


@pytest.fixture
def path3() -> WeightedGraph:
    return path_graph(3)


@pytest.fixture
def single_edge() -> WeightedGraph:
    return WeightedGraph(2, [(0, 1, 1.0)])


@pytest.fixture
def two_k6():
    """Two unit-weight K_6 joined by one unit bridge (5, 6)."""
    return joined_cliques([6, 6])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
